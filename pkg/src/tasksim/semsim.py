"""Task-to-task similarity along two views of a description.

Required action: verb phrases pulled from title and description with a
positional trigger heuristic, compared through WordNet path similarity.
Comprehensibility: the nine structural features plus the ratio of unusual
words, compared as z-scored vectors. Both views produce matrices with unit
diagonal, symmetric, valued in [0, 1].

The verb trigger is a lexicon/position rule, not a POS tagger: deterministic
and offline, good on imperative task prose, known to misfire on declarative
text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from collections import Counter
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .corpus import MicroTask
from .features import STRUCTURAL_FEATURE_NAMES, structural_features
from .text import split_sentences, word_tokens
from .wordnet import NOUN, VERB, WordNetGraph, lemmatize, word_similarity

SIMILARITY_MEASURES = ("required_action", "comprehensibility")

COMPREHENSIBILITY_FEATURE_NAMES = STRUCTURAL_FEATURE_NAMES + (
    "unusual_word_ratio",
)

# A word in more tasks than this is never unusual.
_DF_THRESHOLD = 5

_TRIGGER_PRECEDERS = frozenset({"to", "and", "or", "then", ",", "please"})
_PHRASE_SPAN_CAP = 6

_STREAM_RE = re.compile(r"[A-Za-z0-9'-]+|,")


@dataclass(frozen=True)
class VerbPhrase:
    """One action mention: the trigger's verb lemma, noun lemmas from the
    rest of the span, and the covered source text."""

    verb_lemma: str
    argument_lemmas: tuple[str, ...]
    surface: str


def _sentence_stream(sentence: str):
    """Word tokens and commas with character spans, in order."""
    items = []
    for match in _STREAM_RE.finditer(sentence):
        text = match.group(0)
        if text != "," and not any(ch.isalnum() for ch in text):
            continue
        items.append((text, match.start(), match.end()))
    return items


def extract_verb_phrases(task: MicroTask, wn: WordNetGraph) -> list[VerbPhrase]:
    """Verb phrases from every sentence of title plus description.

    A token triggers a phrase if it lemmatizes as a verb and is either
    sentence-initial or preceded by to/and/or/then/please or a comma. The
    phrase runs to the next trigger or sentence end, at most six word tokens;
    non-trigger tokens with a noun lemmatization become arguments.
    """
    phrases: list[VerbPhrase] = []
    sentences = split_sentences(task.title) + split_sentences(
        task.description_text
    )
    for sentence in sentences:
        items = _sentence_stream(sentence)
        triggers = []
        for i, (text, _, _) in enumerate(items):
            if text == ",":
                continue
            preceded = i > 0 and items[i - 1][0].lower() in _TRIGGER_PRECEDERS
            if not (i == 0 or preceded):
                continue
            verb = lemmatize(text, VERB, wn)
            if verb is not None:
                triggers.append((i, verb))
        for t, (start_item, verb) in enumerate(triggers):
            end_item = (
                triggers[t + 1][0] if t + 1 < len(triggers) else len(items)
            )
            arguments = []
            words_taken = 1  # the trigger itself
            last_included = start_item
            for j in range(start_item + 1, end_item):
                text = items[j][0]
                if text == ",":
                    continue
                if words_taken >= _PHRASE_SPAN_CAP:
                    break
                words_taken += 1
                last_included = j
                noun = lemmatize(text, NOUN, wn)
                if noun is not None:
                    arguments.append(noun)
            surface = sentence[items[start_item][1] : items[last_included][2]]
            phrases.append(VerbPhrase(verb, tuple(arguments), surface))
    return phrases


def phrase_similarity(
    p: VerbPhrase,
    q: VerbPhrase,
    wn: WordNetGraph,
    *,
    verb_weight: float = 0.7,
    measure=word_similarity,
) -> float:
    """Verb similarity, blended with the best argument pair when both
    phrases carry arguments; verb-only (full weight) otherwise."""
    verbs = measure(wn, p.verb_lemma, q.verb_lemma, VERB)
    if p.argument_lemmas and q.argument_lemmas:
        nouns = max(
            measure(wn, a, b, NOUN)
            for a in p.argument_lemmas
            for b in q.argument_lemmas
        )
        return verb_weight * verbs + (1.0 - verb_weight) * nouns
    return verbs


def required_action_similarity(
    A: Sequence[VerbPhrase],
    B: Sequence[VerbPhrase],
    wn: WordNetGraph,
    *,
    verb_weight: float = 0.7,
    measure=word_similarity,
) -> float:
    """Mean best-match phrase similarity, averaged over both directions.
    Zero when either side has no phrases."""
    if not A or not B:
        return 0.0

    def best(p, side):
        return max(
            phrase_similarity(
                p, q, wn, verb_weight=verb_weight, measure=measure
            )
            for q in side
        )

    forward = sum(best(p, B) for p in A) / len(A)
    backward = sum(best(q, A) for q in B) / len(B)
    return (forward + backward) / 2.0


def presence_document_frequencies(
    tasks: Iterable[MicroTask],
) -> Counter[str]:
    """How many tasks mention each token in their description at least once."""
    df: Counter[str] = Counter()
    for task in tasks:
        df.update({tok.lower() for tok in word_tokens(task.description_text)})
    return df


def load_wordlist(path) -> frozenset:
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        word = line.strip().lower()
        if word and not word.startswith("#"):
            words.add(word)
    return frozenset(words)


def default_wordlist() -> frozenset:
    return load_wordlist(
        Path(__file__).resolve().parent / "resources" / "wordlist.txt"
    )


def unusual_word_ratio(
    task: MicroTask,
    corpus_df: Mapping[str, int],
    wordlist: frozenset,
) -> float:
    """Share of description tokens found in at most five tasks corpus-wide
    and missing from the word list. Token-level: repeats count repeatedly."""
    tokens = [tok.lower() for tok in word_tokens(task.description_text)]
    if not tokens:
        return 0.0
    unusual = sum(
        1
        for tok in tokens
        if corpus_df.get(tok, 0) <= _DF_THRESHOLD and tok not in wordlist
    )
    return unusual / len(tokens)


@dataclass(frozen=True, eq=False)
class ComprehensibilityVector:
    """Nine structural features plus the unusual-word ratio, in the order of
    COMPREHENSIBILITY_FEATURE_NAMES."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (len(COMPREHENSIBILITY_FEATURE_NAMES),):
            raise ValueError(
                f"comprehensibility vector needs "
                f"{len(COMPREHENSIBILITY_FEATURE_NAMES)} values, "
                f"got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("comprehensibility vector has non-finite values")
        if not 0.0 <= values[-1] <= 1.0:
            raise ValueError("unusual_word_ratio outside [0, 1]")
        object.__setattr__(self, "values", values)


def comprehensibility_vector(
    task: MicroTask,
    corpus_df: Mapping[str, int],
    wordlist: frozenset,
) -> ComprehensibilityVector:
    ratio = unusual_word_ratio(task, corpus_df, wordlist)
    return ComprehensibilityVector(
        np.append(structural_features(task), ratio)
    )


class CorpusStats(NamedTuple):
    mean: np.ndarray
    std: np.ndarray


def comprehensibility_stats(
    vectors: Sequence[ComprehensibilityVector],
) -> CorpusStats:
    """Per-feature mean and population standard deviation (floored at 1e-9)
    for z-scoring."""
    if not vectors:
        raise ValueError("no vectors to compute stats from")
    stacked = np.vstack([v.values for v in vectors])
    mean = stacked.mean(axis=0)
    std = np.maximum(stacked.std(axis=0), 1e-9)
    return CorpusStats(mean, std)


def _vector_values(v) -> np.ndarray:
    if isinstance(v, ComprehensibilityVector):
        return v.values
    return np.asarray(v, dtype=float)


def comprehensibility_similarity(u, v, stats: CorpusStats) -> float:
    """1/(1+d) where d is the z-scored Euclidean distance scaled by the
    square root of the dimension."""
    a = _vector_values(u)
    b = _vector_values(v)
    if a.shape != b.shape or a.shape != stats.mean.shape:
        raise ValueError(
            f"dimension mismatch: {a.shape} vs {b.shape} vs stats "
            f"{stats.mean.shape}"
        )
    za = (a - stats.mean) / stats.std
    zb = (b - stats.mean) / stats.std
    d = float(np.linalg.norm(za - zb)) / np.sqrt(a.shape[0])
    return 1.0 / (1.0 + d)


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    """Pairwise task similarities under one measure; unit diagonal by
    definition, symmetric within 1e-9, values in [0, 1]."""

    task_ids: tuple[str, ...]
    values: np.ndarray
    measure: str

    def __post_init__(self):
        if self.measure not in SIMILARITY_MEASURES:
            raise ValueError(f"unknown measure '{self.measure}'")
        values = np.asarray(self.values, dtype=float)
        n = len(self.task_ids)
        if values.shape != (n, n):
            raise ValueError(
                f"similarity matrix shape {values.shape} does not match "
                f"{n} task ids"
            )
        if n:
            if not np.all(np.diag(values) == 1.0):
                raise ValueError("similarity diagonal must be exactly 1")
            if np.max(np.abs(values - values.T), initial=0.0) > 1e-9:
                raise ValueError("similarity matrix not symmetric")
            if values.min(initial=1.0) < 0.0 or values.max(initial=0.0) > 1.0:
                raise ValueError("similarity values outside [0, 1]")
        object.__setattr__(self, "values", values)

    def pair(self, id_a: str, id_b: str) -> float:
        i = self.task_ids.index(id_a)
        j = self.task_ids.index(id_b)
        return float(self.values[i, j])


def similarity_matrix(
    corpus,
    measure: str,
    *,
    wn: WordNetGraph | None = None,
    wordlist: frozenset | None = None,
) -> SimilarityMatrix:
    """Pairwise similarity of every task pair under the given measure.

    required_action needs a loaded WordNet graph; comprehensibility uses
    corpus-wide document frequencies and the (bundled by default) word list.
    The diagonal is 1 by definition, whatever the pairwise value would be.
    """
    tasks = list(corpus)
    ids = tuple(task.id for task in tasks)
    n = len(tasks)
    values = np.ones((n, n))
    if measure == "required_action":
        if wn is None:
            raise ValueError("required_action measure needs a WordNet graph")
        phrase_sets = [extract_verb_phrases(task, wn) for task in tasks]
        for i in range(n):
            for j in range(i + 1, n):
                s = required_action_similarity(
                    phrase_sets[i], phrase_sets[j], wn
                )
                values[i, j] = values[j, i] = s
    elif measure == "comprehensibility":
        df = presence_document_frequencies(tasks)
        words = wordlist if wordlist is not None else default_wordlist()
        vectors = [comprehensibility_vector(task, df, words) for task in tasks]
        stats = comprehensibility_stats(vectors) if vectors else None
        for i in range(n):
            for j in range(i + 1, n):
                s = comprehensibility_similarity(
                    vectors[i], vectors[j], stats
                )
                values[i, j] = values[j, i] = s
    else:
        raise ValueError(f"unknown measure '{measure}'")
    np.fill_diagonal(values, 1.0)
    return SimilarityMatrix(ids, values, measure)
