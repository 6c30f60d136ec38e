"""Verb phrases, the two similarity measures, and matrix invariants."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_task
from tasksim.semsim import (
    COMPREHENSIBILITY_FEATURE_NAMES,
    ComprehensibilityVector,
    CorpusStats,
    SimilarityMatrix,
    VerbPhrase,
    comprehensibility_similarity,
    comprehensibility_stats,
    comprehensibility_vector,
    default_wordlist,
    extract_verb_phrases,
    phrase_similarity,
    presence_document_frequencies,
    required_action_similarity,
    similarity_matrix,
    unusual_word_ratio,
)
from tasksim.wordnet import bundled_mini_wordnet_dir, load_wordnet


@pytest.fixture(scope="module")
def wn():
    return load_wordnet(bundled_mini_wordnet_dir())


def text_task(description, title="", id="t1", category="misc"):
    html = f"<p>{description}</p>" if description else ""
    return make_task(id=id, title=title, html=html, category=category)


# ---------------------------------------------------------------- phrases


def test_sign_up_and_confirm(wn):
    phrases = extract_verb_phrases(
        text_task("Sign up and confirm your email."), wn
    )
    assert [p.verb_lemma for p in phrases] == ["sign", "confirm"]
    assert phrases[0].argument_lemmas == ()
    assert phrases[1].argument_lemmas == ("email",)
    assert phrases[0].surface.startswith("Sign")


def test_empty_text_has_no_phrases(wn):
    assert extract_verb_phrases(text_task(""), wn) == []


def test_declarative_heading_has_no_phrases(wn):
    assert extract_verb_phrases(text_task("Quality assurance report"), wn) == []


def test_comma_and_to_precede_triggers(wn):
    phrases = extract_verb_phrases(
        text_task("Download the email, watch your cat. I want to subscribe."),
        wn,
    )
    assert [p.verb_lemma for p in phrases] == ["download", "watch", "subscribe"]
    assert phrases[0].argument_lemmas == ("email",)
    assert phrases[1].argument_lemmas == ("cat",)


def test_phrase_span_caps_at_six_words(wn):
    phrases = extract_verb_phrases(
        text_task("Run aa bb cc dd ee email."), wn
    )
    assert len(phrases) == 1
    assert phrases[0].argument_lemmas == ()  # email is past the cap
    assert phrases[0].surface == "Run aa bb cc dd ee"


def test_title_sentences_are_scanned_too(wn):
    phrases = extract_verb_phrases(
        text_task("Confirm your email.", title="Join now"), wn
    )
    assert [p.verb_lemma for p in phrases] == ["join", "confirm"]


def test_mid_sentence_verb_without_preceder_is_skipped(wn):
    phrases = extract_verb_phrases(
        text_task("You should watch something today."), wn
    )
    assert phrases == []


# ---------------------------------------------------------------- phrase sim


def test_verb_only_phrase_similarity(wn):
    p = VerbPhrase("watch", (), "watch")
    q = VerbPhrase("download", (), "download")
    # Sibling verb groups under the shared root: path length 2.
    assert phrase_similarity(p, q, wn) == pytest.approx(1 / 3, abs=1e-12)


def test_argument_blending(wn):
    p = VerbPhrase("watch", ("dog",), "watch the dog")
    q = VerbPhrase("download", ("cat",), "download a cat")
    expected = 0.7 * (1 / 3) + 0.3 * (1 / 5)
    assert phrase_similarity(p, q, wn) == pytest.approx(expected, abs=1e-12)
    # One side without arguments falls back to the verb alone.
    bare = VerbPhrase("download", (), "download")
    assert phrase_similarity(p, bare, wn) == pytest.approx(1 / 3, abs=1e-12)
    # Full verb weight ignores the arguments.
    assert phrase_similarity(p, q, wn, verb_weight=1.0) == pytest.approx(
        1 / 3, abs=1e-12
    )


def test_identical_phrase_lists_score_one(wn):
    phrases = extract_verb_phrases(
        text_task("Sign up and confirm your email."), wn
    )
    assert phrases
    assert required_action_similarity(phrases, phrases, wn) == pytest.approx(
        1.0, abs=1e-12
    )


def test_empty_side_scores_zero(wn):
    phrases = [VerbPhrase("sign", (), "sign")]
    assert required_action_similarity(phrases, [], wn) == 0.0
    assert required_action_similarity([], phrases, wn) == 0.0
    assert required_action_similarity([], [], wn) == 0.0


def test_required_action_symmetric(wn):
    A = extract_verb_phrases(text_task("Watch the cat. Download the email."), wn)
    B = extract_verb_phrases(text_task("Register and rate the dog."), wn)
    ab = required_action_similarity(A, B, wn)
    ba = required_action_similarity(B, A, wn)
    assert ab == pytest.approx(ba, abs=1e-12)
    assert 0.0 <= ab <= 1.0


def test_required_action_hand_value(wn):
    A = [VerbPhrase("watch", (), "watch")]
    B = [
        VerbPhrase("view", (), "view"),  # same synset as watch: 1.0
        VerbPhrase("download", (), "download"),  # 1/3
    ]
    # Forward: watch's best match is view (1.0). Backward: view matches 1.0,
    # download 1/3, mean 2/3. Symmetrized: (1 + 2/3)/2.
    expected = (1.0 + (1.0 + 1 / 3) / 2) / 2
    assert required_action_similarity(A, B, wn) == pytest.approx(
        expected, abs=1e-12
    )


# ---------------------------------------------------------------- unusual words


def test_all_listed_words_are_usual():
    task = text_task("Download the app now.")
    df = {"download": 1, "the": 1, "app": 1, "now": 1}
    wordlist = frozenset({"download", "the", "app", "now"})
    assert unusual_word_ratio(task, df, wordlist) == 0.0


def test_one_unknown_rare_token():
    task = text_task("download xqzt app now")
    df = {"download": 10, "xqzt": 1, "app": 8, "now": 9}
    wordlist = frozenset({"download", "app", "now"})
    assert unusual_word_ratio(task, df, wordlist) == 0.25


def test_frequent_unlisted_token_is_usual():
    task = text_task("blorp")
    assert unusual_word_ratio(task, {"blorp": 6}, frozenset()) == 0.0
    assert unusual_word_ratio(task, {"blorp": 5}, frozenset()) == 1.0


def test_token_level_counting():
    task = text_task("xqzt xqzt common")
    df = {"xqzt": 1, "common": 9}
    assert unusual_word_ratio(task, df, frozenset({"common"})) == pytest.approx(
        2 / 3
    )


def test_empty_description_ratio_zero():
    assert unusual_word_ratio(text_task(""), {}, frozenset()) == 0.0


@given(st.sets(st.sampled_from(["aa", "bb", "cc", "dd"])))
def test_growing_wordlist_never_raises_ratio(extra):
    task = text_task("aa bb cc dd aa")
    df = {"aa": 1, "bb": 2, "cc": 3, "dd": 9}
    base = unusual_word_ratio(task, df, frozenset())
    grown = unusual_word_ratio(task, df, frozenset(extra))
    assert grown <= base


def test_presence_df_counts_tasks_not_tokens():
    tasks = [
        text_task("alpha alpha beta", id="t1"),
        text_task("alpha gamma", id="t2"),
    ]
    df = presence_document_frequencies(tasks)
    assert df["alpha"] == 2  # present in two tasks, despite three mentions
    assert df["beta"] == 1
    assert df["gamma"] == 1


def test_default_wordlist_loads():
    words = default_wordlist()
    assert len(words) > 500
    assert "the" in words and "download" in words


# ---------------------------------------------------------------- comprehensibility


def test_vector_shape_and_validation():
    task = text_task("Download the app now.")
    df = presence_document_frequencies([task])
    vec = comprehensibility_vector(task, df, default_wordlist())
    assert vec.values.shape == (len(COMPREHENSIBILITY_FEATURE_NAMES),)
    assert len(COMPREHENSIBILITY_FEATURE_NAMES) == 10
    with pytest.raises(ValueError):
        ComprehensibilityVector(np.zeros(9))
    with pytest.raises(ValueError):
        ComprehensibilityVector(np.append(np.zeros(9), 1.5))


def test_identical_vectors_score_one():
    stats = CorpusStats(np.zeros(10), np.ones(10))
    u = ComprehensibilityVector(np.append(np.arange(9.0), 0.5))
    assert comprehensibility_similarity(u, u, stats) == 1.0


def test_unit_zscore_distance_everywhere_halves():
    stats = CorpusStats(np.zeros(10), np.ones(10))
    u = np.zeros(10)
    v = np.ones(10)
    assert comprehensibility_similarity(u, v, stats) == pytest.approx(
        0.5, abs=1e-12
    )
    assert comprehensibility_similarity(v, u, stats) == pytest.approx(
        0.5, abs=1e-12
    )


def test_dimension_mismatch_rejected():
    stats = CorpusStats(np.zeros(4), np.ones(4))
    with pytest.raises(ValueError, match="dimension mismatch"):
        comprehensibility_similarity(np.zeros(10), np.zeros(10), stats)
    with pytest.raises(ValueError, match="dimension mismatch"):
        comprehensibility_similarity(np.zeros(3), np.zeros(4), stats)


def test_stats_floor_degenerate_std():
    vecs = [ComprehensibilityVector(np.zeros(10)) for _ in range(3)]
    stats = comprehensibility_stats(vecs)
    assert np.all(stats.std == 1e-9)
    assert comprehensibility_similarity(vecs[0], vecs[1], stats) == 1.0


# ---------------------------------------------------------------- matrices


def small_corpus():
    return [
        text_task("Sign up and confirm your email.", id="a", title="Join now"),
        text_task("Watch the cat today.", id="b", title="Watch this"),
        text_task("Quality assurance report", id="c"),
    ]


def test_matrix_invariants_both_measures(wn):
    for measure in ("required_action", "comprehensibility"):
        matrix = similarity_matrix(small_corpus(), measure, wn=wn)
        n = len(matrix.task_ids)
        assert matrix.values.shape == (n, n)
        assert np.all(np.diag(matrix.values) == 1.0)
        assert np.max(np.abs(matrix.values - matrix.values.T)) <= 1e-9
        assert matrix.values.min() >= 0.0 and matrix.values.max() <= 1.0


def test_identical_tasks_fully_similar(wn):
    twins = [
        text_task("Sign up and confirm your email.", id="x"),
        text_task("Sign up and confirm your email.", id="y"),
    ]
    for measure in ("required_action", "comprehensibility"):
        matrix = similarity_matrix(twins, measure, wn=wn)
        assert matrix.pair("x", "y") == pytest.approx(1.0, abs=1e-12)


def test_matrix_matches_pairwise_calls(wn):
    tasks = small_corpus()
    matrix = similarity_matrix(tasks, "required_action", wn=wn)
    phrases = [extract_verb_phrases(t, wn) for t in tasks]
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            direct = required_action_similarity(phrases[i], phrases[j], wn)
            assert matrix.values[i, j] == pytest.approx(direct, abs=1e-12)


def test_phraseless_tasks_keep_unit_diagonal(wn):
    # Pairwise self-similarity would be 0 for empty phrase sets; the matrix
    # diagonal is 1 by definition regardless.
    tasks = [text_task("Quality assurance report", id=f"t{i}") for i in range(2)]
    matrix = similarity_matrix(tasks, "required_action", wn=wn)
    assert np.all(np.diag(matrix.values) == 1.0)
    assert matrix.pair("t0", "t1") == 0.0


def test_matrix_requires_resources(wn):
    with pytest.raises(ValueError, match="WordNet"):
        similarity_matrix(small_corpus(), "required_action")
    with pytest.raises(ValueError, match="unknown measure"):
        similarity_matrix(small_corpus(), "cosine", wn=wn)


def test_matrix_validation_rejects_bad_values():
    ids = ("a", "b")
    good = np.array([[1.0, 0.5], [0.5, 1.0]])
    SimilarityMatrix(ids, good, "required_action")
    with pytest.raises(ValueError, match="diagonal"):
        SimilarityMatrix(ids, np.array([[0.9, 0.5], [0.5, 1.0]]), "required_action")
    with pytest.raises(ValueError, match="symmetric"):
        SimilarityMatrix(ids, np.array([[1.0, 0.4], [0.5, 1.0]]), "required_action")
    with pytest.raises(ValueError, match="outside"):
        SimilarityMatrix(ids, np.array([[1.0, 1.5], [1.5, 1.0]]), "required_action")
    with pytest.raises(ValueError, match="unknown measure"):
        SimilarityMatrix(ids, good, "cosine")
    with pytest.raises(ValueError, match="shape"):
        SimilarityMatrix(("a",), good, "required_action")


_WORD_POOL = [
    "download", "watch", "register", "review", "click", "email", "cat",
    "dog", "report", "xqzt", "the", "your", "now", "please", "and",
]


@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_matrix_invariants_on_random_corpora(data, wn):
    n_tasks = data.draw(st.integers(2, 5))
    tasks = []
    for i in range(n_tasks):
        words = data.draw(
            st.lists(st.sampled_from(_WORD_POOL), min_size=0, max_size=10)
        )
        tasks.append(text_task(" ".join(words), id=f"t{i}"))
    measure = data.draw(st.sampled_from(["required_action", "comprehensibility"]))
    matrix = similarity_matrix(tasks, measure, wn=wn)
    assert np.all(np.diag(matrix.values) == 1.0)
    assert np.max(np.abs(matrix.values - matrix.values.T)) <= 1e-9
    assert matrix.values.min() >= 0.0 and matrix.values.max() <= 1.0
