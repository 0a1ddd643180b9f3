"""Textual-energy scoring of artwork descriptions.

Each artwork's title, artist and description are concatenated into one long
pseudo-sentence. The corpus becomes a term-frequency matrix S; the pairwise
energy matrix is (S·Sᵀ)², and an artwork's raw energy is the sum of absolute
values in its row. Raw energies are normalized by the maximum to [0, 1].

Preprocessing lower-cases, folds diacritics, removes stoplist terms and
applies a deterministic light French stemmer (plural/feminine suffix
stripping). The stemmer's behaviour is frozen by a golden file in the test
suite; it is intentionally cruder than a full lemmatizer, which the energy
arithmetic does not require.
"""

from __future__ import annotations

import re
import unicodedata
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Mapping, Sequence

import numpy as np

from museplan.corpus import Museum

_TOKEN_RE = re.compile(r"[a-z0-9]+")

# Ordered suffix rules; first match with a long-enough stem wins.
_SUFFIX_RULES: tuple[tuple[str, str], ...] = (
    ("eaux", "eau"),
    ("aux", "al"),
    ("euses", "eux"),
    ("euse", "eux"),
    ("ees", "e"),
    ("ee", "e"),
    ("es", ""),
    ("s", ""),
    ("e", ""),
)
_MIN_STEM = 3


def stem(word: str) -> str:
    """Light French stemmer: strips plural/feminine endings, keeps stems >= 3 chars."""
    for suffix, repl in _SUFFIX_RULES:
        if word.endswith(suffix):
            stemmed = word[: len(word) - len(suffix)] + repl
            if len(stemmed) >= _MIN_STEM:
                return stemmed
            return word
    return word


def fold(text: str) -> str:
    """Lower-case and strip diacritics (é -> e, œ -> oe)."""
    text = text.lower().replace("œ", "oe").replace("æ", "ae")
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(c for c in decomposed if not unicodedata.combining(c))


def default_stoplist() -> frozenset[str]:
    """The packaged French stoplist (one term per line, '#' comments)."""
    text = resources.files("museplan").joinpath("data/stopwords_fr.txt").read_text("utf-8")
    return parse_stoplist(text.splitlines())


def parse_stoplist(lines: Iterable[str]) -> frozenset[str]:
    terms = set()
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            terms.add(fold(line))
    return frozenset(terms)


def preprocess(text: str, stoplist: frozenset[str] = frozenset()) -> dict[str, int]:
    """Raw text -> bag of stemmed terms with counts; stoplist terms removed."""
    counts: Counter[str] = Counter()
    for token in _TOKEN_RE.findall(fold(text)):
        if token in stoplist:
            continue
        counts[stem(token)] += 1
    return dict(counts)


@dataclass(frozen=True)
class TermDocumentMatrix:
    """Term-frequency matrix: one row per pseudo-sentence, one column per term."""

    terms: tuple[str, ...]
    rows: np.ndarray  # (P, N) int64
    row_labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.rows.shape != (len(self.row_labels), len(self.terms)):
            raise ValueError("matrix shape does not match labels/terms")
        if (self.rows < 0).any():
            raise ValueError("term frequencies must be >= 0")
        if len(self.terms) and not self.rows.any(axis=0).all():
            raise ValueError("all-zero term column; every term must occur somewhere")


def build_matrix(bags: Sequence[Mapping[str, int]],
                 row_labels: Sequence[str] | None = None) -> TermDocumentMatrix:
    """Bags of terms -> matrix with rows in input order, columns lexicographic."""
    if not bags:
        raise ValueError("need at least one bag")
    vocabulary = sorted({t for bag in bags for t in bag})
    if not vocabulary:
        raise ValueError("empty vocabulary")
    col = {t: j for j, t in enumerate(vocabulary)}
    rows = np.zeros((len(bags), len(vocabulary)), dtype=np.int64)
    for i, bag in enumerate(bags):
        for t, count in bag.items():
            rows[i, col[t]] = count
    labels = tuple(row_labels) if row_labels is not None else tuple(str(i) for i in range(len(bags)))
    return TermDocumentMatrix(terms=tuple(vocabulary), rows=rows, row_labels=labels)


def energy_matrix(s: TermDocumentMatrix | np.ndarray) -> np.ndarray:
    """Pairwise energies (S·Sᵀ)² as an exact int64 matrix (matrix square, not elementwise)."""
    rows = s.rows if isinstance(s, TermDocumentMatrix) else np.asarray(s, dtype=np.int64)
    gram = rows @ rows.T
    return gram @ gram


def row_energy(e: np.ndarray, mu: int) -> int:
    """Total interaction energy of row ``mu``: sum of absolute values, diagonal included."""
    return int(np.abs(e[mu]).sum())


@dataclass(frozen=True)
class EnergyTable:
    """Per-artwork raw energies and max-normalized scores in [0, 1]."""

    raw_energy: dict[str, float]
    score: dict[str, float]

    def ranked(self) -> list[tuple[str, float]]:
        """(artwork id, score) sorted by descending score, then id."""
        return sorted(self.score.items(), key=lambda kv: (-kv[1], kv[0]))

    def to_csv(self) -> str:
        lines = ["artwork_id,raw_energy,score"]
        for pid, sc in self.ranked():
            lines.append(f"{pid},{self.raw_energy[pid]:.6f},{sc:.6f}")
        return "\n".join(lines) + "\n"


def rank_artworks(museum: Museum, query: str | None = None,
                  stoplist: frozenset[str] | None = None) -> EnergyTable:
    """Score every artwork of ``museum`` by textual energy.

    One pseudo-sentence per artwork (title ∥ artist ∥ description); an
    artwork whose description is empty after preprocessing keeps an all-zero
    row and scores 0. The query, when given (default: the dataset's own), is
    appended as an extra row and its interaction with each artwork is counted
    once more on top of the plain row sum, so query-related artworks rise
    monotonically; the query row itself is not scored.
    """
    if not museum.artworks:
        raise ValueError("empty corpus: museum has no artworks")
    if stoplist is None:
        stoplist = default_stoplist()
    if query is None:
        query = museum.query

    bags: list[dict[str, int]] = []
    labels: list[str] = []
    for art in museum.artworks:
        if art.description.strip() and preprocess(art.description, stoplist):
            pseudo = f"{art.title} {art.artist} {art.description}"
            bags.append(preprocess(pseudo, stoplist))
        else:
            bags.append({})
        labels.append(art.id)

    query_bag = preprocess(query, stoplist) if query else {}
    has_query = bool(query_bag)
    if has_query:
        bags.append(query_bag)
        labels.append("__query__")

    if not any(bags):
        raw = {a.id: 0.0 for a in museum.artworks}
        return EnergyTable(raw_energy=raw, score=dict(raw))

    matrix = build_matrix(bags, labels)
    energies = energy_matrix(matrix)
    raw: dict[str, float] = {}
    for i, art in enumerate(museum.artworks):
        value = row_energy(energies, i)
        if has_query:
            value += int(abs(energies[i, -1]))
        raw[art.id] = float(value)

    peak = max(raw.values())
    if peak > 0:
        score = {pid: v / peak for pid, v in raw.items()}
    else:
        score = {pid: 0.0 for pid in raw}
    return EnergyTable(raw_energy=raw, score=score)
