import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from regender.evaluation import classifier_report, corpus_error_report, word_error_count
from regender.tagset import GenderClass

G, N = GenderClass.G, GenderClass.N


@pytest.mark.parametrize(
    "hyp, ref, n",
    [
        ("está adjunta .", "está adjunta .", 0),
        ("está adjunto .", "está adjunta .", 1),
        ("uno dos", "uno dos tres", 1),
        ("uno dos tres", "uno dos", 1),
        ("", "a b", 2),
        ("a b c", "c b a", 2),
        ("x uno dos tres", "uno dos tres", 1),
    ],
)
def test_word_error_count(hyp, ref, n):
    assert word_error_count(hyp, ref) == n


_sent = st.lists(st.sampled_from(["lo", "la", "veo", ".", "casa"]), max_size=6).map(" ".join)


@given(_sent)
def test_self_distance_zero(x):
    assert word_error_count(x, x) == 0


@given(_sent, _sent)
def test_symmetric_for_equal_length(a, b):
    if len(a.split()) == len(b.split()):
        assert word_error_count(a, b) == word_error_count(b, a)


def test_hand_computed_percentages():
    r = corpus_error_report(
        [
            ("Lo veo bien hoy .", "La veo bien hoy .", G),
            ("uno dos tres cuatro cinco", "uno dos tres cuatro cinco", N),
        ]
    )
    assert (r.sentences, r.words, r.incorrect_words) == (2, 10, 1)
    assert r.per_sentence_pct == 50.0 and r.per_word_pct == 10.0
    assert r.breakdown["neutral"].per_sentence_pct == 0.0
    assert r.breakdown["regenderable"].per_sentence_pct == 100.0
    assert r.breakdown["regenderable"].per_word_pct == 20.0


def test_all_correct():
    r = corpus_error_report([("a b", "a b", G), ("c", "c", N)])
    for c in r.breakdown.values():
        assert c.per_sentence_pct == 0.0 and c.per_word_pct == 0.0


def test_all_is_sum_and_order_invariant():
    rng = random.Random(3)
    words = ["lo", "la", "veo", "."]
    triples = []
    for _ in range(200):
        ref = [rng.choice(words) for _ in range(rng.randint(1, 5))]
        hyp = [w if rng.random() < 0.8 else rng.choice(words) for w in ref]
        if rng.random() < 0.1:
            hyp.append("x")
        triples.append((" ".join(hyp), " ".join(ref), rng.choice([G, N])))
    r = corpus_error_report(triples)
    assert r.breakdown["all"] == r.breakdown["neutral"] + r.breakdown["regenderable"]
    rng.shuffle(triples)
    assert corpus_error_report(triples) == r
    assert r.per_sentence_pct >= r.per_word_pct


def test_empty_report():
    with pytest.raises(ValueError):
        corpus_error_report([])


def test_report_formats():
    r = corpus_error_report([("Lo veo .", "La veo .", G), ("a b", "a b", N)])
    table = r.to_table()
    assert "regenderable" in table and "33.33" in table and "edit distance" in table
    kv = dict(line.split("=", 1) for line in r.to_kv().splitlines())
    assert kv["regenderable.per_sentence_pct"] == "100.0"
    assert kv["all.words"] == "5"


def test_classifier_report_perfect():
    r = classifier_report([G, N, N], [G, N, N])
    assert r.accuracy == 1.0
    assert all(s.precision == 1.0 and s.recall == 1.0 for s in r.per_class.values())


def test_classifier_report_all_g():
    r = classifier_report([G] * 4, [G, G, N, N])
    assert r.per_class[G].recall == 1.0 and r.per_class[G].precision == 0.5
    assert r.per_class[N].precision == 0.0 and r.per_class[N].precision_undefined
    assert r.per_class[N].recall == 0.0
    assert "never predicted" in r.to_table()


def test_classifier_report_errors():
    with pytest.raises(ValueError):
        classifier_report([G], [G, N])
    with pytest.raises(ValueError):
        classifier_report([], [])


@given(st.lists(st.tuples(st.sampled_from([G, N]), st.sampled_from([G, N])), min_size=1))
def test_classifier_report_properties(pairs):
    preds, gold = zip(*pairs)
    r = classifier_report(preds, gold)
    assert r.accuracy == 1 - sum(p is not g for p, g in pairs) / len(pairs)
    assert sum(s.support for s in r.per_class.values()) == len(pairs)
    for s in r.per_class.values():
        assert 0 <= s.precision <= 1 and 0 <= s.recall <= 1
