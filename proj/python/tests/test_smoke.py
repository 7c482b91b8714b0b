import math

import pytest

import botdna


def test_encode_kinds():
    assert botdna.encode_kinds(["retweet", "tweet", "tweet", "retweet"]) == "TAAT"
    assert botdna.encode_kinds([]) == ""
    with pytest.raises(ValueError):
        botdna.encode_kinds(["quote"])


def test_compress_stats_and_features():
    original, compressed, ratio = botdna.compress_stats("TAAT" * 100)
    assert original == 400
    assert 0 < compressed < original
    assert ratio == original / compressed

    for name, arity in [("A", 2), ("B", 2), ("C", 2), ("D", 3)]:
        assert len(botdna.dna_features("TAAT", name)) == arity


def test_auc_and_threshold():
    assert botdna.auc([0.9, 0.8, 0.2, 0.1], [1, 1, 0, 0]) == 1.0
    assert botdna.auc([0.1, 0.2, 0.8, 0.9], [1, 1, 0, 0]) == 0.0
    threshold = botdna.best_f1_threshold([0.9, 0.8, 0.2, 0.1], [1, 1, 0, 0])
    assert 0.2 < threshold < 0.8


def test_anderson_darling():
    same = list(range(1, 30))
    _, _, reject = botdna.anderson_darling(same, same)
    assert not reject
    shifted = [x + 50 for x in same]
    _, standardized, reject = botdna.anderson_darling(same, shifted)
    assert reject
    assert standardized > 3.752


def test_sentiment():
    cleaned = botdna.clean_text("RT @u: Stay   safe! https://t.co/x #lockdown")
    assert cleaned == "Stay safe! lockdown"
    compound = botdna.compound_score("good", {"good": 1.5})
    assert math.isclose(compound, 0.3612, abs_tol=1e-4)
    assert botdna.sentiment_label(compound) == "positive"
    assert botdna.sentiment_label(0.0) == "neutral"


def test_enumerate_combos_matches_closed_form():
    profiles = [
        ("feed", 108, 347),
        ("survey", 690, 1525),
        ("political", 13, 0),
        ("spambots", 5925, 2907),
        ("celebrity", 0, 5814),
        ("vendor", 731, 0),
        ("promo", 1899, 0),
        ("honeypot", 14619, 15211),
    ]
    assert len(botdna.enumerate_combos(profiles)) == 247


def test_bigram_model(tmp_path):
    model = botdna.BigramModel.train(["alice", "bob", "carol"], 1.0)
    assert model.likelihood("alice") > model.likelihood("zzzz")
    path = tmp_path / "bigram.csv"
    model.save(str(path))
    loaded = botdna.BigramModel.load(str(path))
    assert loaded.likelihood("alice") == model.likelihood("alice")
