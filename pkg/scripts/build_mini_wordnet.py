#!/usr/bin/env python3
"""Regenerate the bundled miniature WordNet database.

Writes index.*, data.*, and *.exc files in the WordNet 3.x database grammar,
with synset offsets that are true byte positions into each data file. The
database is small on purpose: 30 synsets and 24 hypernym edges chosen to
exercise the parser, the morphological rules, and path similarity (the
dog/cat noun chain has path length 4).

Run from anywhere; writes into src/tasksim/resources/mini_wordnet/.
"""

from __future__ import annotations

import sys
from pathlib import Path

OUT_DIR = (
    Path(__file__).resolve().parents[1]
    / "src"
    / "tasksim"
    / "resources"
    / "mini_wordnet"
)

HEADER = (
    "  1 This is a hand-built miniature database in the WordNet 3.x file\n"
    "  2 format, bundled for tests and offline use; offsets are byte positions.\n"
)

# key, lemmas, hypernym key (None for roots), gloss
NOUNS = [
    ("entity", ["entity"], None, "that which is perceived to have existence"),
    ("physical_entity", ["physical_entity"], "entity", "an entity that has physical existence"),
    ("object", ["object", "physical_object"], "physical_entity", "a tangible and visible entity"),
    ("living_thing", ["living_thing"], "object", "a structure capable of growing"),
    ("animal", ["animal", "ox"], "living_thing", "a living organism that feeds on organic matter"),
    ("carnivore", ["carnivore"], "animal", "a flesh-eating mammal"),
    ("canine", ["canine", "canid"], "carnivore", "a doglike mammal"),
    ("dog", ["dog", "domestic_dog"], "canine", "a domesticated carnivorous mammal"),
    ("feline", ["feline", "felid"], "carnivore", "a catlike mammal"),
    ("cat", ["cat", "true_cat"], "feline", "a small domesticated feline kept as a pet"),
    ("artifact", ["artifact"], "object", "a man-made object"),
    ("device", ["device"], "artifact", "an instrumentality made for a purpose"),
    ("computer", ["computer", "computing_machine"], "device", "a machine for performing computations"),
    ("abstraction", ["abstraction"], "entity", "a general concept"),
    ("communication", ["communication"], "abstraction", "something that is communicated"),
    ("message", ["message"], "communication", "a communication in writing or speech"),
    ("email", ["email", "electronic_mail"], "message", "a message sent between computers"),
]

VERBS = [
    ("act", ["act", "move"], None, "perform an action"),
    ("register", ["register", "join", "subscribe", "enroll", "activate"], "act", "sign on or record formally"),
    ("install", ["install", "download", "launch", "configure", "update"], "act", "set up software for use"),
    ("watch", ["watch", "view", "stream", "play", "observe"], "act", "look at attentively"),
    ("search", ["search", "find", "browse", "click", "visit"], "act", "try to locate or discover"),
    ("review", ["review", "rate", "comment", "describe", "summarize"], "act", "appraise critically"),
    ("sign", ["sign"], "act", "mark or approve with a signature"),
    ("confirm", ["confirm", "verify"], "act", "establish as valid or genuine"),
    ("run", ["run", "execute"], "act", "carry out a process"),
]

ADJS = [
    ("good", ["good"], None, "having desirable qualities"),
    ("easy", ["easy", "simple"], None, "requiring little effort"),
]

ADVS = [
    ("well", ["well"], None, "in a good or proper manner"),
    ("quickly", ["quickly", "fast"], None, "with speed"),
]

EXCEPTIONS = {
    "noun": [("oxen", "ox")],
    "verb": [("ran", "run"), ("running", "run")],
    "adj": [("better", "good")],
    "adv": [("best", "well")],
}

POS_TABLES = {
    "noun": ("n", 3, NOUNS),
    "verb": ("v", 30, VERBS),
    "adj": ("a", 0, ADJS),
    "adv": ("r", 2, ADVS),
}

# Semantic pointers beyond the hypernym tree, to exercise pointer parsing:
# the adverb derives from the adjective (lemma-level source/target).
EXTRA_POINTERS = {("adv", "well"): [("\\", "adj", "good", "0101")]}

# Verb sentence frames (frame 2 "Somebody ----s", 8 "Somebody ----s
# something"); 00 applies the frame to all words.
VERB_FRAMES = {"act": [(2, 0), (8, 0)]}
DEFAULT_VERB_FRAME = [(2, 0)]


def _pointers(file_name, table):
    """symbol, target (file, key), source/target field, per synset key."""
    by_key = {key: [] for key, _, _, _ in table}
    for key, _, parent, _ in table:
        if parent is not None:
            by_key[key].append(("@", (file_name, parent), "0000"))
            by_key[parent].append(("~", (file_name, key), "0000"))
    for (fname, key), extras in EXTRA_POINTERS.items():
        if fname == file_name:
            for symbol, target_file, target_key, st in extras:
                by_key[key].append((symbol, (target_file, target_key), st))
    return by_key


def _data_line(file_name, key, lemmas, gloss, pointers, offsets, lex_filenum, ss_type):
    fields = [
        f"{offsets[(file_name, key)]:08d}",
        f"{lex_filenum:02d}",
        ss_type,
        f"{len(lemmas):02x}",
    ]
    for lemma in lemmas:
        fields += [lemma, "0"]
    fields.append(f"{len(pointers):03d}")
    for symbol, target, st in pointers:
        target_pos = POS_TABLES[target[0]][0]
        fields += [symbol, f"{offsets[target]:08d}", target_pos, st]
    if file_name == "verb":
        frames = VERB_FRAMES.get(key, DEFAULT_VERB_FRAME)
        fields.append(f"{len(frames):02d}")
        for f_num, w_num in frames:
            fields += ["+", f"{f_num:02d}", f"{w_num:02x}"]
    return " ".join(fields) + " | " + gloss


def build_files():
    pointer_map = {
        name: _pointers(name, table) for name, (_, _, table) in POS_TABLES.items()
    }
    # Line lengths do not depend on offset values (fixed-width fields), so
    # one dummy pass fixes every offset and a second pass renders for real.
    offsets = {
        (name, key): 0
        for name, (_, _, table) in POS_TABLES.items()
        for key, _, _, _ in table
    }
    for _pass in range(2):
        for name, (ss_type, lex_filenum, table) in POS_TABLES.items():
            position = len(HEADER.encode())
            for key, lemmas, _, gloss in table:
                line = _data_line(
                    name, key, lemmas, gloss, pointer_map[name][key],
                    offsets, lex_filenum, ss_type,
                )
                offsets[(name, key)] = position
                position += len(line.encode()) + 1

    files = {}
    for name, (ss_type, lex_filenum, table) in POS_TABLES.items():
        lines = [
            _data_line(
                name, key, lemmas, gloss, pointer_map[name][key],
                offsets, lex_filenum, ss_type,
            )
            for key, lemmas, _, gloss in table
        ]
        files[f"data.{name}"] = HEADER + "\n".join(lines) + "\n"

        entries = {}
        for key, lemmas, _, _ in table:
            symbols = {symbol for symbol, _, _ in pointer_map[name][key]}
            for lemma in lemmas:
                entry = entries.setdefault(lemma, (set(), []))
                entry[0].update(symbols)
                entry[1].append(offsets[(name, key)])
        index_lines = []
        for lemma in sorted(entries):
            symbols, lemma_offsets = entries[lemma]
            ordered = [s for s in ("!", "@", "~", "\\") if s in symbols]
            fields = [lemma, ss_type, str(len(lemma_offsets)), str(len(ordered))]
            fields += ordered
            fields += [str(len(lemma_offsets)), "0"]
            fields += [f"{off:08d}" for off in lemma_offsets]
            index_lines.append(" ".join(fields))
        files[f"index.{name}"] = HEADER + "\n".join(index_lines) + "\n"

        exc_lines = [" ".join(pair) for pair in EXCEPTIONS[name]]
        files[f"{name}.exc"] = "\n".join(exc_lines) + "\n"
    return files


def main() -> int:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for file_name, content in sorted(build_files().items()):
        (OUT_DIR / file_name).write_text(content, encoding="utf-8")
        print(f"wrote {OUT_DIR / file_name}")

    from tasksim.wordnet import load_wordnet, word_similarity

    graph = load_wordnet(OUT_DIR)
    assert graph.synset_count() == 30, graph.synset_count()
    assert graph.edge_count() == 24, graph.edge_count()
    dog_cat = word_similarity(graph, "dog", "cat", "n")
    assert abs(dog_cat - 0.2) < 1e-12, dog_cat
    print(f"reloaded: {graph.synset_count()} synsets, "
          f"{graph.edge_count()} hypernym edges, dog/cat {dog_cat}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
