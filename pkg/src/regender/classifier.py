"""Neutral vs re-genderable sentence classifier.

Features are TF-IDF weighted character 4-7-grams (capped vocabulary) and
word 1-3-grams, each block L2-normalised, plus one binary column that fires
when the sentence contains a word some rewrite rule can re-gender.  The
model is a linear SVM trained with Pegasos-style stochastic subgradient
descent on the L2-regularised hinge loss.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .morphology import DEFAULT_LEXICON, ExceptionLexicon, is_gendered_word
from .tagset import GenderClass

MODEL_FORMAT = "regender-svm"
MODEL_VERSION = 1


def char_ngrams(text: str, lo: int = 4, hi: int = 7) -> list[str]:
    text = text.lower()
    return [text[i : i + n] for n in range(lo, hi + 1) for i in range(len(text) - n + 1)]


def word_ngrams(text: str, lo: int = 1, hi: int = 3) -> list[str]:
    words = text.lower().split()
    return [" ".join(words[i : i + n]) for n in range(lo, hi + 1) for i in range(len(words) - n + 1)]


@dataclass
class FeatureSpace:
    char_vocab: dict[str, int]
    word_vocab: dict[str, int]
    idf: np.ndarray  # one weight per char/word column
    char_range: tuple[int, int] = (4, 7)
    word_range: tuple[int, int] = (1, 3)

    @property
    def morph_column(self) -> int:
        return len(self.char_vocab) + len(self.word_vocab)

    @property
    def dim(self) -> int:
        return self.morph_column + 1


def fit_feature_space(
    texts: Iterable[str],
    max_char_features: int = 20000,
    char_range: tuple[int, int] = (4, 7),
    word_range: tuple[int, int] = (1, 3),
) -> FeatureSpace:
    char_tf: Counter = Counter()
    char_df: Counter = Counter()
    word_df: Counter = Counter()
    n_docs = 0
    any_text = False
    for text in texts:
        n_docs += 1
        any_text = any_text or bool(text.strip())
        grams = char_ngrams(text, *char_range)
        char_tf.update(grams)
        char_df.update(set(grams))
        word_df.update(set(word_ngrams(text, *word_range)))
    if not any_text:
        raise ValueError("cannot fit a feature space on an empty corpus")

    # most frequent first, ties broken lexicographically
    kept = sorted(char_tf, key=lambda g: (-char_tf[g], g))[:max_char_features]
    char_vocab = {g: i for i, g in enumerate(sorted(kept))}
    off = len(char_vocab)
    word_vocab = {g: off + i for i, g in enumerate(sorted(word_df))}

    df = np.empty(off + len(word_vocab))
    for g, i in char_vocab.items():
        df[i] = char_df[g]
    for g, i in word_vocab.items():
        df[i] = word_df[g]
    idf = np.log((1.0 + n_docs) / (1.0 + df)) + 1.0
    return FeatureSpace(char_vocab, word_vocab, idf, tuple(char_range), tuple(word_range))


@dataclass(frozen=True)
class SparseVector:
    indices: np.ndarray  # int64, strictly increasing
    values: np.ndarray  # float64

    def dot(self, dense: np.ndarray) -> float:
        return float(dense[self.indices] @ self.values)

    def to_dict(self) -> dict[int, float]:
        return dict(zip(self.indices.tolist(), self.values.tolist()))


def _block(grams: list[str], vocab: dict[str, int], idf: np.ndarray):
    counts = Counter(vocab[g] for g in grams if g in vocab)
    if not counts:
        return [], []
    idx = sorted(counts)
    vals = np.array([counts[i] for i in idx], dtype=float) * idf[idx]
    vals /= np.linalg.norm(vals)
    return idx, vals.tolist()


def extract_features(text: str, space: FeatureSpace, lex: ExceptionLexicon = DEFAULT_LEXICON) -> SparseVector:
    ci, cv = _block(char_ngrams(text, *space.char_range), space.char_vocab, space.idf)
    wi, wv = _block(word_ngrams(text, *space.word_range), space.word_vocab, space.idf)
    flag = 1.0 if any(is_gendered_word(w, lex) for w in text.split()) else 0.0
    return SparseVector(
        np.array(ci + wi + [space.morph_column], dtype=np.int64),
        np.array(cv + wv + [flag], dtype=np.float64),
    )


@dataclass(frozen=True)
class Hyperparams:
    lam: float = 1e-4
    epochs: int = 10
    seed: int = 42

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError("regularisation strength must be positive")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")


@dataclass
class ClassifierModel:
    weights: np.ndarray
    bias: float
    space: FeatureSpace
    hyperparams: Hyperparams
    # primal objective after each epoch; not persisted
    history: list = field(default_factory=list, compare=False)

    def score(self, x: SparseVector) -> float:
        return x.dot(self.weights) + self.bias


def _sign(label: GenderClass) -> float:
    return 1.0 if label is GenderClass.G else -1.0


def objective(w: np.ndarray, b: float, xs: Sequence[SparseVector], ys: np.ndarray, lam: float) -> float:
    """Regularised hinge loss; the bias is regularised along with the weights."""
    margins = ys * np.array([x.dot(w) + b for x in xs])
    hinge = np.maximum(0.0, 1.0 - margins).mean()
    return 0.5 * lam * (float(w @ w) + b * b) + float(hinge)


def train(
    records: Sequence[tuple[str, GenderClass]],
    space: FeatureSpace,
    hyperparams: Hyperparams = Hyperparams(),
    lex: ExceptionLexicon = DEFAULT_LEXICON,
) -> ClassifierModel:
    labels = {GenderClass(lbl) for _, lbl in records}
    if len(labels) < 2:
        raise ValueError(f"training needs both G and N examples, got {sorted(l.value for l in labels)}")

    xs = [extract_features(text, space, lex) for text, _ in records]
    ys = np.array([_sign(GenderClass(lbl)) for _, lbl in records])
    lam = hyperparams.lam
    rng = np.random.default_rng(hyperparams.seed)

    # w = scale * v, with the bias stored as a constant-1 feature in v[-1]
    dim = space.dim
    v = np.zeros(dim + 1)
    scale = 1.0
    t = 0
    history = []
    for _ in range(hyperparams.epochs):
        for i in rng.permutation(len(xs)):
            t += 1
            eta = 1.0 / (lam * t)
            x, y = xs[i], ys[i]
            margin = y * scale * (x.dot(v) + v[-1])
            shrink = 1.0 - eta * lam
            if shrink <= 0.0:
                v[:] = 0.0
                scale = 1.0
            else:
                scale *= shrink
            if margin < 1.0:
                step = eta * y / scale
                v[x.indices] += step * x.values
                v[-1] += step
            if scale < 1e-9:
                v *= scale
                scale = 1.0
        w = scale * v
        history.append(objective(w[:dim], float(w[-1]), xs, ys, lam))

    w = scale * v
    return ClassifierModel(w[:dim].copy(), float(w[-1]), space, hyperparams, history)


def predict(model: ClassifierModel, text: str, lex: ExceptionLexicon = DEFAULT_LEXICON):
    """Return ``(label, margin)``; positive margins mean re-genderable."""
    s = model.score(extract_features(text, model.space, lex))
    return (GenderClass.G if s > 0 else GenderClass.N), s


def save_model(model: ClassifierModel, path) -> None:
    """Write the model as JSON; floats are stored in hex so loading is bit-exact."""
    space = model.space
    doc = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "hyperparams": {"lam": model.hyperparams.lam, "epochs": model.hyperparams.epochs, "seed": model.hyperparams.seed},
        "char_range": list(space.char_range),
        "word_range": list(space.word_range),
        "char_vocab": sorted(space.char_vocab, key=space.char_vocab.get),
        "word_vocab": sorted(space.word_vocab, key=space.word_vocab.get),
        "idf": [float(x).hex() for x in space.idf],
        "weights": [float(x).hex() for x in model.weights],
        "bias": float(model.bias).hex(),
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(doc, f, ensure_ascii=False)
        f.write("\n")


def load_model(path) -> ClassifierModel:
    with open(path, encoding="utf-8") as f:
        doc = json.load(f)
    if doc.get("format") != MODEL_FORMAT:
        raise ValueError(f"{path}: not a {MODEL_FORMAT} model file")
    if doc.get("version") != MODEL_VERSION:
        raise ValueError(f"{path}: unsupported model version {doc.get('version')}")
    char_vocab = {g: i for i, g in enumerate(doc["char_vocab"])}
    off = len(char_vocab)
    word_vocab = {g: off + i for i, g in enumerate(doc["word_vocab"])}
    space = FeatureSpace(
        char_vocab,
        word_vocab,
        np.array([float.fromhex(x) for x in doc["idf"]]),
        tuple(doc["char_range"]),
        tuple(doc["word_range"]),
    )
    weights = np.array([float.fromhex(x) for x in doc["weights"]])
    if len(weights) != space.dim:
        raise ValueError(f"{path}: weight vector has {len(weights)} entries, feature space needs {space.dim}")
    return ClassifierModel(weights, float.fromhex(doc["bias"]), space, Hyperparams(**doc["hyperparams"]))
