import json
import pathlib

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from museplan.corpus import parse_museum
from museplan.textenergy import (
    EnergyTable,
    build_matrix,
    energy_matrix,
    fold,
    preprocess,
    rank_artworks,
    row_energy,
    stem,
)

GOLDEN = json.loads(
    (pathlib.Path(__file__).parent / "data" / "stem_golden.json").read_text("utf-8"))


def naive_energy(rows: np.ndarray) -> np.ndarray:
    """Triple-loop (S·Sᵀ)² oracle, exact integer arithmetic."""
    p, n = rows.shape
    gram = [[sum(int(rows[i, k]) * int(rows[j, k]) for k in range(n))
             for j in range(p)] for i in range(p)]
    return np.array([[sum(gram[i][k] * gram[k][j] for k in range(p))
                      for j in range(p)] for i in range(p)], dtype=np.int64)


def test_preprocess_stopwords_and_counts():
    assert preprocess("Le jardin, le jardin!", frozenset({"le"})) == {"jardin": 2}


def test_preprocess_empty():
    assert preprocess("", frozenset()) == {}


def test_preprocess_stemming_matches_golden_example():
    assert preprocess("peintures impressionnistes", frozenset()) == {
        "peintur": 1, "impressionnist": 1}


def test_stem_golden_file():
    assert {w: stem(fold(w)) for w in GOLDEN} == GOLDEN


def test_fold_diacritics():
    assert fold("Musée de l'Œuvre") == "musee de l'oeuvre"


def test_build_matrix_example():
    m = build_matrix([{"a": 1, "b": 1}, {"b": 1, "c": 1}])
    assert m.terms == ("a", "b", "c")
    assert m.rows.tolist() == [[1, 1, 0], [0, 1, 1]]


def test_build_matrix_single_bag():
    m = build_matrix([{"a": 3}])
    assert m.rows.tolist() == [[3]]


def test_build_matrix_errors():
    with pytest.raises(ValueError, match="at least one bag"):
        build_matrix([])
    with pytest.raises(ValueError, match="empty vocabulary"):
        build_matrix([{}, {}])


def test_energy_matrix_example():
    e = energy_matrix(np.array([[1, 1, 0], [0, 1, 1]]))
    assert e.tolist() == [[5, 4], [4, 5]]
    assert row_energy(e, 0) == 9


def test_energy_matrix_identity_and_orthogonal():
    assert energy_matrix(np.array([[1]])).tolist() == [[1]]
    assert energy_matrix(np.array([[1, 0], [0, 1]])).tolist() == [[1, 0], [0, 1]]


def test_row_energy_zero_row():
    e = energy_matrix(np.array([[0, 0], [1, 2]]))
    assert row_energy(e, 0) == 0


@settings(max_examples=60, deadline=None)
@given(arrays(np.int64, st.tuples(st.integers(1, 5), st.integers(1, 6)),
              elements=st.integers(0, 7)))
def test_energy_matches_naive_oracle(rows):
    e = energy_matrix(rows)
    assert np.array_equal(e, naive_energy(rows))
    assert np.array_equal(e, e.T)
    assert (np.diag(e) >= 0).all()


@settings(max_examples=30, deadline=None)
@given(arrays(np.int64, st.tuples(st.integers(2, 5), st.integers(2, 6)),
              elements=st.integers(0, 7)),
       st.randoms(use_true_random=False))
def test_row_energy_permutation_properties(rows, rng):
    e = energy_matrix(rows)
    energies = [row_energy(e, i) for i in range(rows.shape[0])]

    cols = list(range(rows.shape[1]))
    rng.shuffle(cols)
    e_cols = energy_matrix(rows[:, cols])
    assert [row_energy(e_cols, i) for i in range(rows.shape[0])] == energies

    perm = list(range(rows.shape[0]))
    rng.shuffle(perm)
    e_perm = energy_matrix(rows[perm])
    assert [row_energy(e_perm, i) for i in range(len(perm))] == [energies[p] for p in perm]


def test_duplicating_row_leaves_disjoint_rows_unchanged():
    bags = [{"a": 2, "b": 1}, {"c": 1, "d": 3}, {"a": 1, "b": 2}]
    base = energy_matrix(build_matrix(bags))
    dup = energy_matrix(build_matrix(bags + [{"a": 2, "b": 1}]))
    # row 1 shares no terms with the duplicated row: its energy is unchanged
    assert row_energy(dup, 1) == row_energy(base, 1)


def _single_artwork_museum(description, query=None):
    return parse_museum({
        "meta": {"name": "m", **({"query": query} if query else {})},
        "vertices": [{"id": "E", "kind": "entrance", "room_time": 0},
                     {"id": "X", "kind": "exit", "room_time": 0},
                     {"id": "v", "kind": "room", "room_time": 1}],
        "arcs": [{"from": "E", "to": "v", "arc_time": 0.5},
                 {"from": "v", "to": "X", "arc_time": 0.5}],
        "artworks": [{"id": "p1", "title": "Tableau", "artist": "Peintre",
                      "year": 2000, "description": description, "room": "v"}],
    })[0]


def test_rank_single_artwork_scores_one():
    table = rank_artworks(_single_artwork_museum("un jardin de fleurs"))
    assert table.score == {"p1": 1.0}


def test_rank_empty_description_scores_zero():
    table = rank_artworks(_single_artwork_museum(""))
    assert table.score == {"p1": 0.0}
    assert table.raw_energy == {"p1": 0.0}


def test_rank_identical_descriptions_tie():
    data = {
        "meta": {"name": "m"},
        "vertices": [{"id": "E", "kind": "entrance", "room_time": 0},
                     {"id": "X", "kind": "exit", "room_time": 0},
                     {"id": "v", "kind": "room", "room_time": 1}],
        "arcs": [{"from": "E", "to": "v", "arc_time": 0.5},
                 {"from": "v", "to": "X", "arc_time": 0.5}],
        "artworks": [
            {"id": "p1", "title": "Même tableau", "artist": "Peintre", "year": 2000,
             "description": "un jardin sous la pluie", "room": "v"},
            {"id": "p2", "title": "Même tableau", "artist": "Peintre", "year": 2000,
             "description": "un jardin sous la pluie", "room": "v"},
            {"id": "p3", "title": "Autre chose", "artist": "Peintre", "year": 2000,
             "description": "portrait sombre au chapeau noir", "room": "v"},
        ],
    }
    museum, _ = parse_museum(data)
    table = rank_artworks(museum)
    assert table.score["p1"] == table.score["p2"]


def test_rank_empty_corpus_errors():
    museum, _ = parse_museum({
        "meta": {"name": "m"},
        "vertices": [{"id": "E", "kind": "entrance", "room_time": 0},
                     {"id": "X", "kind": "exit", "room_time": 0}],
        "arcs": [{"from": "E", "to": "X", "arc_time": 0.5}],
        "artworks": [],
    })
    with pytest.raises(ValueError, match="empty corpus"):
        rank_artworks(museum)


def test_rank_orangerie_scores(orangerie, orangerie_energy):
    museum, _ = orangerie
    table = orangerie_energy
    assert len(table.score) == 144
    assert all(0.0 <= s <= 1.0 for s in table.score.values())
    assert max(table.score.values()) == 1.0


MASTERPIECES = {
    "monet-matin", "monet-nuages", "monet-reflets-verts", "monet-soleil-couchant",
    "monet-le-matin-clair-aux-saules", "monet-le-matin-aux-saules",
    "monet-reflets-d-arbres", "monet-les-deux-saules",
    "renoir-jeunes-filles-au-piano", "cezanne-pommes-et-biscuits",
    "modigliani-paul-guillaume-novo-pilota", "rousseau-la-carriole-du-pere-junier",
    "derain-arlequin-et-pierrot", "soutine-le-petit-patissier",
    "laurencin-portrait-de-mademoiselle-chanel", "matisse-les-trois-soeurs",
    "picasso-grande-baigneuse",
    "derain-portrait-de-madame-paul-guillaume-au-grand-chapeau",
}


def test_rank_orangerie_masterpieces_on_top(orangerie_energy):
    ranked = [pid for pid, _ in orangerie_energy.ranked()]
    assert ranked[0] in MASTERPIECES
    top_quartile = set(ranked[:36])
    assert len(MASTERPIECES & top_quartile) >= 14


def test_rank_deterministic(orangerie, orangerie_energy):
    museum, _ = orangerie
    again = rank_artworks(museum)
    assert again.score == orangerie_energy.score
    assert again.to_csv() == orangerie_energy.to_csv()


def test_query_boosts_query_related_artwork():
    base = {
        "meta": {"name": "m"},
        "vertices": [{"id": "E", "kind": "entrance", "room_time": 0},
                     {"id": "X", "kind": "exit", "room_time": 0},
                     {"id": "v", "kind": "room", "room_time": 1}],
        "arcs": [{"from": "E", "to": "v", "arc_time": 0.5},
                 {"from": "v", "to": "X", "arc_time": 0.5}],
        "artworks": [
            {"id": "a", "title": "Un", "artist": "p", "year": 2000,
             "description": "verger calme ombre murmure", "room": "v"},
            {"id": "b", "title": "Deux", "artist": "p", "year": 2000,
             "description": "peinture impressionniste lumineuse", "room": "v"},
        ],
    }
    museum, _ = parse_museum(base)
    no_query = rank_artworks(museum, query=None)
    with_query = rank_artworks(museum, query="peinture impressionniste")
    gain_b = with_query.raw_energy["b"] - no_query.raw_energy["b"]
    gain_a = with_query.raw_energy["a"] - no_query.raw_energy["a"]
    assert gain_b > gain_a >= 0


def test_energy_table_csv_sorted():
    table = EnergyTable(raw_energy={"a": 2.0, "b": 4.0}, score={"a": 0.5, "b": 1.0})
    lines = table.to_csv().strip().splitlines()
    assert lines[0] == "artwork_id,raw_energy,score"
    assert lines[1].startswith("b,") and lines[2].startswith("a,")
