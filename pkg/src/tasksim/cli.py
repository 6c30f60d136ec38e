"""Command-line front end and the synthetic corpus generator.

Subcommands map one-to-one onto the library surface: ingest (load +
quality report), synth (generate a labeled corpus), cv (one evaluation
cell), grid (all cells), sim (pairwise similarity matrix), cluster
(k-medoids + category distribution), report (grid and clusterings in one
run). Every emitted report starts with '#' header lines echoing the tool
version, seed, and configuration; the same argv against the same inputs
produces byte-identical files. Outputs are written to a temp file and
renamed into place so a failed run never leaves a half-written report.

The generator replaces a proprietary crowdsourcing dataset: categories get
disjoint 15-word signature vocabularies (five of the words are verbs known
to the bundled verb lexicon), descriptions mix signature and shared noise
tokens 60/40, and the factual fields come from per-category distributions.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .corpus import CorpusError, load_corpus
from .evaluation import EvaluationError, cross_validate, grid_run
from .features import load_sentiment_lexicon
from .learn import ALGORITHMS
from .reports import (
    render_distribution_csv,
    render_distribution_text,
    render_grid_csv,
    render_grid_text,
    render_matrix_csv,
    render_matrix_text,
    render_report_csv,
    render_report_text,
)
from .cluster import k_medoids, purity
from .semsim import SIMILARITY_MEASURES, load_wordlist, similarity_matrix
from .wordnet import WordNetError, load_wordnet


class CliError(RuntimeError):
    """Invalid invocation or missing resource, reported as one line."""


# ---------------------------------------------------------------------------
# Synthetic corpus generation
# ---------------------------------------------------------------------------

# Five curated categories. Each signature set has 15 words: 5 verbs the
# bundled verb lexicon knows (one shared synset per category) plus 10
# category-specific content words. The sets are pairwise disjoint.
_SIGNATURES: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = {
    "signup": (
        ("register", "join", "subscribe", "enroll", "activate"),
        ("account", "membership", "username", "password", "newsletter",
         "profile", "signup", "invite", "confirmation", "bonus"),
    ),
    "install": (
        ("install", "download", "launch", "configure", "update"),
        ("app", "software", "version", "installer", "apk",
         "setup", "storage", "android", "settings", "homescreen"),
    ),
    "watch": (
        ("watch", "view", "stream", "play", "observe"),
        ("video", "clip", "channel", "episode", "trailer",
         "playlist", "seconds", "screen", "advert", "footage"),
    ),
    "search": (
        ("search", "find", "browse", "click", "visit"),
        ("keyword", "website", "webpage", "listing", "result",
         "directory", "link", "query", "homepage", "tab"),
    ),
    "review": (
        ("review", "rate", "comment", "describe", "summarize"),
        ("opinion", "feedback", "stars", "rating", "paragraph",
         "product", "experience", "quality", "impression", "honest"),
    ),
}

# Shared noise pool, exactly 100 words, disjoint from every signature set.
_NOISE_POOL = (
    "the", "a", "an", "and", "or", "then", "please", "to", "of", "in",
    "on", "at", "for", "with", "from", "by", "your", "our", "this", "that",
    "these", "each", "every", "some", "any", "more", "most", "very",
    "quite", "just", "only", "also", "again", "once", "twice", "after",
    "before", "during", "until", "while", "first", "second", "third",
    "next", "last", "new", "small", "big", "full", "short", "long",
    "quick", "easy", "simple", "free", "extra", "daily", "weekly",
    "final", "total", "same", "other", "early", "late", "real", "sure",
    "clear", "proper", "valid", "ready", "active", "open", "good", "best",
    "top", "main", "side", "front", "back", "home", "work", "task", "job",
    "time", "day", "week", "minute", "moment", "step", "part", "point",
    "place", "case", "note", "list", "here", "there", "now", "soon",
    "today",
)

_COUNTRY_POOL = ("AU", "BR", "CA", "DE", "FR", "GB", "IN", "PH", "PK", "US")
_PROOFS = ("screenshot", "username", "link to profile", "order id",
           "text answer")


def _signature_for(index: int) -> tuple[str, tuple[str, ...], tuple[str, ...]]:
    names = list(_SIGNATURES)
    if index < len(names):
        name = names[index]
        verbs, extras = _SIGNATURES[name]
        return name, verbs, extras
    # Past the curated five: synthesized names and vocabularies, still
    # pairwise disjoint by construction. These words are known to no
    # lexicon, so such categories only exercise the schema.
    name = f"extra{index - len(names) + 1}"
    words = tuple(f"{name}term{j:02d}" for j in range(15))
    return name, words[:5], words[5:]


def _sentences(rng: random.Random, tokens: list[str]) -> list[str]:
    out = []
    i = 0
    while i < len(tokens):
        take = min(rng.randint(4, 9), len(tokens) - i)
        chunk = tokens[i:i + take]
        i += take
        out.append(" ".join([chunk[0].capitalize()] + chunk[1:]) + ".")
    return out


def _description_html(
    rng: random.Random, category: str, signature: tuple[str, ...],
    verbs: tuple[str, ...], serial: int,
) -> str:
    n_tokens = rng.randint(20, 40)
    tokens = [
        rng.choice(signature) if rng.random() < 0.6
        else rng.choice(_NOISE_POOL)
        for _ in range(n_tokens)
    ]
    # the opening word is always one of the category verbs, so every task
    # description yields at least one verb phrase
    tokens[0] = rng.choice(verbs)
    sentences = _sentences(rng, tokens)

    n_paras = rng.randint(1, min(3, len(sentences)))
    base, extra = divmod(len(sentences), n_paras)
    paragraphs = []
    start = 0
    for p in range(n_paras):
        size = base + (1 if p < extra else 0)
        paragraphs.append(sentences[start:start + size])
        start += size

    parts = [f"<p>{' '.join(group)}</p>" for group in paragraphs]
    if rng.random() < 0.3 and len(parts) >= 2:
        items = "".join(f"<li>{s}</li>" for s in paragraphs[-1])
        parts[-1] = f"<ul>{items}</ul>"
    if rng.random() < 0.25:
        parts.append(
            f'<p>More info <a href="https://{category}.example.com'
            f'/t/{serial}">here</a>.</p>'
        )
    return "".join(parts)


def _factual_fields(rng: random.Random, index: int) -> dict:
    positions = rng.randint(5 + 5 * index, 40 + 10 * index)
    fields = {
        "employer": f"emp{10 * index + rng.randint(1, 6)}",
        "payment": round(rng.uniform(0.05 + 0.1 * index,
                                     0.45 + 0.1 * index), 2),
        "time_to_finish": round(rng.uniform(2.0 + index, 8.0 + 2 * index), 1),
        "time_to_rate": float(rng.randint(1, 3 + index)),
        "positions": positions,
        "jobs_done": rng.randint(0, positions),
        "success_rate": round(rng.uniform(0.50 + 0.04 * index,
                                          0.80 + 0.04 * index), 3),
    }
    if rng.random() < 0.6:
        fields["countries"] = []
    else:
        fields["countries"] = sorted(
            rng.sample(_COUNTRY_POOL, rng.randint(1, 3))
        )
    return fields


def synthetic_corpus_text(
    seed: int, categories: int = 5, per_category: int = 60
) -> str:
    """The JSONL content for a labeled synthetic corpus, one record per
    line, no header. Same arguments, same string."""
    if categories < 1:
        raise ValueError("categories must be at least 1")
    if per_category < 1:
        raise ValueError("per_category must be at least 1")
    rng = random.Random(seed)
    lines = []
    serial = 0
    for index in range(categories):
        name, verbs, extras = _signature_for(index)
        signature = verbs + extras
        for _ in range(per_category):
            title_verb = rng.choice(verbs)
            title_extra = rng.choice(extras)
            record = {
                "id": f"task-{serial:04d}",
                "title": f"{title_verb.capitalize()} {title_extra}",
                "description_html": _description_html(
                    rng, name, signature, verbs, serial
                ),
                "proof": rng.choice(_PROOFS),
                "category": name,
            }
            record.update(_factual_fields(rng, index))
            lines.append(json.dumps(record))
            serial += 1
    return "\n".join(lines) + "\n"


def generate_synthetic_corpus(
    path, seed: int, categories: int = 5, per_category: int = 60
) -> int:
    """Write a synthetic corpus file; returns the number of records."""
    text = synthetic_corpus_text(seed, categories, per_category)
    _atomic_write(path, text)
    return categories * per_category


# ---------------------------------------------------------------------------
# Run configuration and output plumbing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand run depends on, validated up front."""

    corpus_path: str | None = None
    wordnet_dir: str | None = None
    wordlist_path: str | None = None
    sentiment_lexicon_path: str | None = None
    seed: int = 7
    k_folds: int = 10
    feature_sets: tuple = ()
    algorithms: tuple = ()
    cluster_k: int = 15
    measure: str | None = None
    output: str | None = None
    format: str = "text"

    def validate(self) -> None:
        for label, value in (
            ("--corpus", self.corpus_path),
            ("--wordlist", self.wordlist_path),
            ("--sentiment-lexicon", self.sentiment_lexicon_path),
        ):
            if value is not None and not Path(value).is_file():
                raise CliError(f"resource error: {label} file not found: "
                               f"{value}")
        if self.wordnet_dir is not None and not Path(self.wordnet_dir).is_dir():
            raise CliError(f"resource error: --wordnet directory not found: "
                           f"{self.wordnet_dir}")
        if self.measure == "required_action" and self.wordnet_dir is None:
            raise CliError(
                "resource error: --wordnet is required for measure "
                "'required_action'"
            )
        if self.format not in ("text", "csv"):
            raise CliError(f"unknown format: {self.format}")


def _atomic_write(path, text: str) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(
        dir=str(target.parent) or ".", prefix=f".{target.name}."
    )
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _header(command: str, seed: int, echo: dict) -> str:
    pairs = " ".join(f"{key}={value}" for key, value in echo.items())
    return (
        f"# tasksim {__version__} {command}\n"
        f"# seed: {seed}\n"
        f"# config: {pairs}\n"
    )


def _emit(out_path, text: str) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        _atomic_write(out_path, text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _load_lexicon(args):
    if getattr(args, "sentiment_lexicon", None) is None:
        return None
    return load_sentiment_lexicon(args.sentiment_lexicon)


def cmd_ingest(args) -> int:
    config = RunConfig(corpus_path=args.corpus, seed=args.seed,
                       output=args.out, format=args.format)
    config.validate()
    corpus = load_corpus(args.corpus, strict=args.strict)
    echo = {"corpus": args.corpus, "strict": args.strict,
            "format": args.format}
    counts = sorted(corpus.category_counts.items())
    if args.format == "csv":
        body_lines = ["category,count"]
        body_lines += [f"{category},{n}" for category, n in counts]
        quality = "".join(
            f"# {line}\n" for line in corpus.report.render().splitlines()
        )
        body = quality + "\n".join(body_lines) + "\n"
    else:
        width = max([len("category")] + [len(c) for c, _ in counts])
        table = [f"{'category'.ljust(width)}  count"]
        table += [f"{c.ljust(width)}  {n}" for c, n in counts]
        body = corpus.report.render() + "\n\n" + "\n".join(table) + "\n"
    _emit(args.out, _header("ingest", args.seed, echo) + body)
    return 0


def cmd_synth(args) -> int:
    generate_synthetic_corpus(
        args.out, args.seed, args.categories, args.per_category
    )
    return 0


def _parse_sets(spec: str) -> tuple[str, ...]:
    # one cell's worth of feature sets; ',' and '+' both join
    parts = tuple(
        part.strip()
        for part in spec.replace(",", "+").split("+")
        if part.strip()
    )
    if not parts:
        raise CliError(f"empty feature-set list: {spec!r}")
    return parts


def cmd_cv(args) -> int:
    config = RunConfig(
        corpus_path=args.corpus, seed=args.seed, k_folds=args.folds,
        feature_sets=_parse_sets(args.sets), algorithms=(args.algo,),
        sentiment_lexicon_path=args.sentiment_lexicon,
        output=args.out, format=args.format,
    )
    config.validate()
    corpus = load_corpus(args.corpus)
    report = cross_validate(
        corpus, config.feature_sets, args.algo, args.folds, args.seed,
        sentiment_lexicon=_load_lexicon(args),
    )
    echo = {"corpus": args.corpus, "sets": args.sets, "algo": args.algo,
            "folds": args.folds, "format": args.format}
    render = render_report_csv if args.format == "csv" else render_report_text
    _emit(args.out, _header("cv", args.seed, echo) + render(report))
    return 0


def cmd_grid(args) -> int:
    if args.sets == "all-combos":
        combos = None
    else:
        combos = tuple(
            _parse_sets(part) for part in args.sets.split(",") if part.strip()
        )
        if not combos:
            raise CliError(f"empty feature-set list: {args.sets!r}")
    algos = ALGORITHMS if args.algo == "all" else tuple(
        part.strip() for part in args.algo.split(",") if part.strip()
    )
    config = RunConfig(
        corpus_path=args.corpus, seed=args.seed, k_folds=args.folds,
        feature_sets=combos or (), algorithms=algos,
        sentiment_lexicon_path=args.sentiment_lexicon,
        output=args.out, format=args.format,
    )
    config.validate()
    corpus = load_corpus(args.corpus)
    grid = grid_run(
        corpus, combos, algos, k=args.folds, seed=args.seed,
        sentiment_lexicon=_load_lexicon(args),
    )
    echo = {"corpus": args.corpus, "sets": args.sets, "algo": args.algo,
            "folds": args.folds, "format": args.format}
    render = render_grid_csv if args.format == "csv" else render_grid_text
    _emit(args.out, _header("grid", args.seed, echo) + render(grid))
    return 0


def _similarity_inputs(args):
    wn = load_wordnet(args.wordnet) if args.wordnet else None
    wordlist = load_wordlist(args.wordlist) if args.wordlist else None
    return wn, wordlist


def cmd_sim(args) -> int:
    config = RunConfig(
        corpus_path=args.corpus, wordnet_dir=args.wordnet,
        wordlist_path=args.wordlist, seed=args.seed, measure=args.measure,
        output=args.out, format=args.format,
    )
    config.validate()
    corpus = load_corpus(args.corpus)
    wn, wordlist = _similarity_inputs(args)
    matrix = similarity_matrix(corpus, args.measure, wn=wn, wordlist=wordlist)
    echo = {"corpus": args.corpus, "measure": args.measure,
            "format": args.format}
    render = render_matrix_csv if args.format == "csv" else render_matrix_text
    _emit(args.out, _header("sim", args.seed, echo) + render(matrix))
    return 0


def cmd_cluster(args) -> int:
    config = RunConfig(
        corpus_path=args.corpus, wordnet_dir=args.wordnet,
        wordlist_path=args.wordlist, seed=args.seed, measure=args.measure,
        cluster_k=args.k, output=args.out, format=args.format,
    )
    config.validate()
    corpus = load_corpus(args.corpus)
    wn, wordlist = _similarity_inputs(args)
    matrix = similarity_matrix(corpus, args.measure, wn=wn, wordlist=wordlist)
    clustering = k_medoids(matrix, args.k, seed=args.seed)
    labels = {task.id: task.category for task in corpus}
    echo = {"corpus": args.corpus, "measure": args.measure, "k": args.k,
            "format": args.format}
    render = (render_distribution_csv if args.format == "csv"
              else render_distribution_text)
    stats = (
        f"# total_dissimilarity: {clustering.total_dissimilarity:.6f}\n"
        f"# purity: {purity(clustering, labels):.6f}\n"
    )
    _emit(args.out, _header("cluster", args.seed, echo) + stats
          + render(clustering, corpus))
    return 0


def cmd_report(args) -> int:
    config = RunConfig(
        corpus_path=args.corpus, wordnet_dir=args.wordnet,
        wordlist_path=args.wordlist,
        sentiment_lexicon_path=args.sentiment_lexicon,
        seed=args.seed, k_folds=args.folds, cluster_k=args.k,
        measure="required_action",  # the clustering half always needs it
        output=args.out, format=args.format,
    )
    config.validate()
    corpus = load_corpus(args.corpus)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    ext = "csv" if args.format == "csv" else "txt"
    echo_base = {"corpus": args.corpus, "folds": args.folds, "k": args.k,
                 "format": args.format}

    grid = grid_run(
        corpus, None, ALGORITHMS, k=args.folds, seed=args.seed,
        sentiment_lexicon=_load_lexicon(args),
    )
    render = render_grid_csv if args.format == "csv" else render_grid_text
    _atomic_write(
        out_dir / f"grid.{ext}",
        _header("report", args.seed, echo_base) + render(grid),
    )

    wn, wordlist = _similarity_inputs(args)
    labels = {task.id: task.category for task in corpus}
    for measure in SIMILARITY_MEASURES:
        matrix = similarity_matrix(corpus, measure, wn=wn, wordlist=wordlist)
        clustering = k_medoids(matrix, args.k, seed=args.seed)
        body = (
            f"# total_dissimilarity: {clustering.total_dissimilarity:.6f}\n"
            f"# purity: {purity(clustering, labels):.6f}\n"
        )
        dist_render = (render_distribution_csv if args.format == "csv"
                       else render_distribution_text)
        echo = dict(echo_base, measure=measure)
        _atomic_write(
            out_dir / f"clusters_{measure}.{ext}",
            _header("report", args.seed, echo) + body
            + dist_render(clustering, corpus),
        )
    return 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tasksim",
        description="Classify, compare, and cluster crowdsourcing "
                    "micro-tasks from their descriptions.",
    )
    parser.add_argument("--version", action="version",
                        version=f"tasksim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, corpus=True, out_required=False):
        if corpus:
            p.add_argument("--corpus", required=True,
                           help="task corpus in JSONL form")
        p.add_argument("--seed", type=int, default=7)
        p.add_argument("--out", required=out_required,
                       help="output path (default: stdout)")
        p.add_argument("--format", choices=("text", "csv"), default="text")

    p = sub.add_parser("ingest", help="load a corpus and report quality")
    common(p)
    p.add_argument("--strict", action="store_true",
                   help="abort on the first invalid record")
    p.set_defaults(handler=cmd_ingest)

    p = sub.add_parser("synth", help="generate a labeled synthetic corpus")
    common(p, corpus=False, out_required=True)
    p.add_argument("--categories", type=int, default=5)
    p.add_argument("--per-category", type=int, default=60)
    p.set_defaults(handler=cmd_synth)

    p = sub.add_parser("cv", help="cross-validate one feature/algorithm cell")
    common(p)
    p.add_argument("--sets", required=True,
                   help="feature sets for this one cell, joined with ',' "
                        "or '+', e.g. content+structural")
    p.add_argument("--algo", required=True, choices=ALGORITHMS)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--sentiment-lexicon",
                   help="word\\tpolarity file for the semantic set")
    p.set_defaults(handler=cmd_cv)

    p = sub.add_parser("grid", help="cross-validate many cells at once")
    common(p)
    p.add_argument("--sets", default="all-combos",
                   help="'all-combos' or comma-separated '+'-joined "
                        "combinations")
    p.add_argument("--algo", default="all",
                   help="'all' or comma-separated algorithm names")
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--sentiment-lexicon")
    p.set_defaults(handler=cmd_grid)

    p = sub.add_parser("sim", help="pairwise task similarity matrix")
    common(p)
    p.add_argument("--measure", required=True, choices=SIMILARITY_MEASURES)
    p.add_argument("--wordnet", help="directory with WordNet index/data "
                                     "files")
    p.add_argument("--wordlist", help="common-word list, one per line")
    p.set_defaults(handler=cmd_sim)

    p = sub.add_parser("cluster",
                       help="k-medoids clustering and category table")
    common(p)
    p.add_argument("--measure", required=True, choices=SIMILARITY_MEASURES)
    p.add_argument("--wordnet")
    p.add_argument("--wordlist")
    p.add_argument("--k", type=int, default=15)
    p.set_defaults(handler=cmd_cluster)

    p = sub.add_parser("report",
                       help="full grid plus both clusterings, one directory")
    common(p, out_required=True)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--wordnet")
    p.add_argument("--wordlist")
    p.add_argument("--sentiment-lexicon")
    p.add_argument("--k", type=int, default=15)
    p.set_defaults(handler=cmd_report)

    return parser


def dispatch(argv=None) -> int:
    """Parse argv and run one subcommand; returns the exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed its diagnostic
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (CliError, CorpusError, WordNetError, EvaluationError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
