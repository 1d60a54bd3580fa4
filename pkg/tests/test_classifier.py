import math

import numpy as np
import pytest

from regender.classifier import (
    Hyperparams,
    extract_features,
    fit_feature_space,
    load_model,
    predict,
    save_model,
    train,
)
from regender.tagset import GenderClass

G, N = GenderClass.G, GenderClass.N

TOY = [
    ("estoy cansado", G),
    ("estoy muy cansado", G),
    ("ya estoy cansado", G),
    ("hoy estoy cansado", G),
    ("está cansado .", G),
    ("sigo cansado", G),
    ("tan cansado", G),
    ("cansado y triste", G),
    ("muy cansado hoy", G),
    ("estás cansado ?", G),
    ("eso es bueno", N),
    ("es bueno", N),
    ("hola a todos", N),
    ("gracias por todo", N),
    ("nos vemos mañana", N),
    ("hasta luego", N),
    ("muy bien gracias", N),
    ("eso es genial", N),
    ("vale perfecto", N),
    ("qué tal estás", N),
]


@pytest.fixture(scope="module")
def toy_model():
    space = fit_feature_space(t for t, _ in TOY)
    return train(TOY, space)


def test_single_short_word():
    space = fit_feature_space(["hola"])
    assert list(space.char_vocab) == ["hola"]


def test_word_ngrams():
    space = fit_feature_space(["lo siento"])
    assert set(space.word_vocab) == {"lo", "siento", "lo siento"}


def test_char_cap_keeps_most_frequent():
    # 30 000 distinct 4-char texts, each contributing exactly one 4-gram
    alphabet = "abcdefghijklmnopqrstuvwxyz"
    texts = []
    for i in range(30000):
        a, r = divmod(i, 26**3)
        b, r = divmod(r, 26**2)
        c, d = divmod(r, 26)
        texts.append(alphabet[a] + alphabet[b] + alphabet[c] + alphabet[d])
    frequent = texts[-5:]
    space = fit_feature_space(texts + frequent * 3)
    assert len(space.char_vocab) == 20000
    assert all(g in space.char_vocab for g in frequent)
    # the rest are the lexicographically smallest
    assert "aaaa" in space.char_vocab and texts[29990] not in space.char_vocab


def test_dimensions_and_idf():
    space = fit_feature_space(t for t, _ in TOY)
    assert space.dim == len(space.char_vocab) + len(space.word_vocab) + 1
    assert np.all(np.isfinite(space.idf)) and np.all(space.idf > 0)


def test_empty_corpus():
    with pytest.raises(ValueError):
        fit_feature_space([])
    with pytest.raises(ValueError):
        fit_feature_space(["", "  "])


def test_morph_flag():
    space = fit_feature_space(t for t, _ in TOY)
    assert extract_features("estoy cansado", space).to_dict()[space.morph_column] == 1.0
    assert extract_features("eso es", space).to_dict()[space.morph_column] == 0.0
    assert extract_features("", space).to_dict() == {space.morph_column: 0.0}


def test_block_norms():
    texts = [t for t, _ in TOY]
    space = fit_feature_space(texts)
    n_char = len(space.char_vocab)
    for t in texts + ["xyz", "qwerty uiop"]:
        x = extract_features(t, space)
        assert np.all(np.diff(x.indices) > 0) and x.indices.max() < space.dim
        for mask in (x.indices < n_char, (x.indices >= n_char) & (x.indices < space.morph_column)):
            norm = float(np.linalg.norm(x.values[mask]))
            assert norm == 0.0 or math.isclose(norm, 1.0, rel_tol=1e-12)


def test_toy_training_accuracy(toy_model):
    assert all(predict(toy_model, t)[0] is y for t, y in TOY)
    assert predict(toy_model, "estoy cansado")[0] is G
    assert predict(toy_model, "eso es bueno")[0] is N


def test_margin_sign(toy_model):
    label, score = predict(toy_model, "estoy cansado")
    assert score > 0
    assert predict(toy_model, "estoy cansado") == (label, score)


def test_objective_non_increasing(toy_model):
    h = toy_model.history
    assert len(h) == toy_model.hyperparams.epochs
    assert h[-1] <= h[0]
    for a, b in zip(h, h[1:]):
        assert b <= a * 1.05 + 1e-9


def test_training_is_deterministic(toy_model):
    space = fit_feature_space(t for t, _ in TOY)
    again = train(TOY, space)
    assert np.array_equal(again.weights, toy_model.weights) and again.bias == toy_model.bias
    other = train(TOY, space, Hyperparams(seed=1))
    assert not np.array_equal(other.weights, toy_model.weights)


def test_single_class():
    space = fit_feature_space(["a b"])
    with pytest.raises(ValueError):
        train([("a b", G), ("a", G)], space)


@pytest.mark.parametrize("kw", [{"lam": 0}, {"epochs": 0}])
def test_bad_hyperparams(kw):
    with pytest.raises(ValueError):
        Hyperparams(**kw)


def test_save_load_bit_exact(toy_model, tmp_path):
    p = tmp_path / "m.json"
    save_model(toy_model, p)
    m = load_model(p)
    assert m.weights.tobytes() == toy_model.weights.tobytes()
    assert m.bias == toy_model.bias and m.hyperparams == toy_model.hyperparams
    assert m.space.char_vocab == toy_model.space.char_vocab
    assert m.space.word_vocab == toy_model.space.word_vocab
    assert m.space.idf.tobytes() == toy_model.space.idf.tobytes()
    for t, _ in TOY:
        assert predict(m, t) == predict(toy_model, t)


def test_load_rejects_foreign_files(tmp_path):
    p = tmp_path / "x.json"
    p.write_text('{"format": "other"}')
    with pytest.raises(ValueError):
        load_model(p)
