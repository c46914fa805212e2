import math

import numpy as np
import pytest

from src.core.config import EmbeddingConfig
from src.core.errors import EmptyVocabularyError, OutOfVocabularyError, VectorFormatError
from src.matcher.similarity import cosine
from src.subword_embeddings import (
    EmbeddingModel,
    NegativeSampler,
    SkipgramTrainer,
    TrainingExample,
    character_ngrams,
    extract_ngrams,
    fnv1a_32,
    instance_gradients,
    instance_loss,
    load_pretrained,
    log_loss,
    save,
    score,
    train,
)

WORDS = ["red", "leather", "bag", "blue"]


def random_model(dim: int = 8, buckets: int = 16, seed: int = 3, scale: float = 0.5):
    rng = np.random.default_rng(seed)
    config = EmbeddingConfig(dim=dim, bucket_count=buckets, ngram_min=3, ngram_max=4)
    return EmbeddingModel(
        config,
        WORDS,
        [8, 4, 2, 1],
        rng.normal(scale=scale, size=(buckets + len(WORDS), dim)),
        rng.normal(scale=scale, size=(len(WORDS), dim)),
    )


def toy_corpus(sentences: int = 200, seed: int = 0) -> list[list[str]]:
    topics = [
        ["red", "blue", "black", "color", "dark", "light"],
        ["leather", "canvas", "cotton", "material", "soft", "hard"],
    ]
    rng = np.random.default_rng(seed)
    corpus = []
    for _ in range(sentences):
        words = topics[int(rng.integers(2))]
        corpus.append([words[int(i)] for i in rng.integers(len(words), size=8)])
    return corpus


class TestNgrams:
    @pytest.mark.parametrize(
        ("data", "expected"),
        [(b"", 0x811C9DC5), (b"a", 0xE40C292C), (b"foobar", 0xBF9CF968)],
    )
    def test_fnv1a_32(self, data, expected):
        assert fnv1a_32(data) == expected

    def test_boundary_marked_ngrams(self):
        assert character_ngrams("go", 3, 3) == ["<go", "go>"]
        assert character_ngrams("go", 3, 6) == ["<go", "<go>", "go>"]

    def test_short_word_never_empty(self):
        assert character_ngrams("a", 3, 6) == ["<a>"]

    def test_extract_ngrams_hashes_then_word_row(self):
        config = EmbeddingConfig(dim=4, bucket_count=1000, ngram_min=3, ngram_max=3)
        rows = extract_ngrams("go", config, word_row=1000 + 7)
        assert rows == [
            fnv1a_32(b"<go") % 1000,
            fnv1a_32(b"go>") % 1000,
            1007,
        ]
        assert extract_ngrams("go", config, 1007) == rows

    def test_no_buckets_keeps_only_word_row(self):
        config = EmbeddingConfig(dim=4, bucket_count=0)
        assert extract_ngrams("colour", config, word_row=3) == [3]
        assert extract_ngrams("colour", config) == []


class TestScore:
    def test_unit_vectors(self):
        config = EmbeddingConfig(dim=3, bucket_count=0)
        axis = np.array([[1.0, 0.0, 0.0]])
        model = EmbeddingModel(config, ["x"], [1], axis.copy(), axis.copy())
        assert score("x", "x", model) == 1.0

    def test_zero_rows(self):
        model = random_model()
        model.input_vectors[:] = 0.0
        assert model.score("red", "bag") == 0.0

    def test_matches_naive_summation(self):
        model = random_model()
        for w in ("red", "leathers", "bgaa"):
            word_row = model.word_row(model.word2index[w]) if w in model else None
            for c in WORDS:
                expected = 0.0
                for row in extract_ngrams(w, model.config, word_row):
                    for k in range(model.dim):
                        expected += model.input_vectors[row, k] * model.context_vector(c)[k]
                assert model.score(w, c) == pytest.approx(expected, abs=1e-12)

    def test_context_out_of_vocabulary(self):
        with pytest.raises(OutOfVocabularyError):
            random_model().score("red", "purple")
        with pytest.raises(KeyError):
            random_model().context_vector("purple")


class TestInstanceLoss:
    def test_all_scores_zero(self):
        model = random_model()
        model.output_vectors[:] = 0.0
        example = TrainingExample(target=0, context=1, negatives=(0, 2, 2, 3, 0))
        assert instance_loss(example, model) == pytest.approx(6 * math.log(2), abs=1e-12)
        assert 6 * math.log(2) == pytest.approx(4.1589, abs=1e-4)

    def test_large_positive_score(self):
        assert log_loss(100.0) == pytest.approx(0.0, abs=1e-40)
        assert math.isfinite(log_loss(-1000.0))
        assert log_loss(-1000.0) == pytest.approx(1000.0)

    def test_matches_formula(self):
        model = random_model(scale=0.3)
        example = TrainingExample(target=1, context=2, negatives=(0, 3, 3))
        scores = [model.score(WORDS[1], word) for word in WORDS]
        expected = math.log1p(math.exp(-scores[2])) + sum(
            math.log1p(math.exp(scores[n])) for n in example.negatives
        )
        assert instance_loss(example, model) == pytest.approx(expected, abs=1e-10)

    def test_negatives_must_differ_from_context(self):
        with pytest.raises(ValueError):
            TrainingExample(target=0, context=1, negatives=(1,))


class TestGradients:
    def _numeric(self, model, example, matrix, row, h=1e-4):
        numeric = np.zeros(model.dim)
        for k in range(model.dim):
            original = matrix[row, k]
            matrix[row, k] = original + h
            plus = instance_loss(example, model)
            matrix[row, k] = original - h
            minus = instance_loss(example, model)
            matrix[row, k] = original
            numeric[k] = (plus - minus) / (2 * h)
        return numeric

    def test_matches_central_differences(self):
        model = random_model(dim=8, buckets=16)
        example = TrainingExample(target=1, context=0, negatives=(2, 3, 2))
        gradients = instance_gradients(example, model)

        assert gradients.loss == pytest.approx(instance_loss(example, model))
        assert set(gradients.input_rows) == set(model.subword_rows("leather").tolist())
        assert set(gradients.output_rows) == {0, 2, 3}

        for row, analytic in gradients.input_rows.items():
            numeric = self._numeric(model, example, model.input_vectors, row)
            np.testing.assert_allclose(analytic, numeric, rtol=1e-4, atol=1e-7)
        for row, analytic in gradients.output_rows.items():
            numeric = self._numeric(model, example, model.output_vectors, row)
            np.testing.assert_allclose(analytic, numeric, rtol=1e-4, atol=1e-7)


class TestNegativeSampler:
    def test_distribution(self):
        counts = [1, 2, 3, 4]
        sampler = NegativeSampler(counts, np.random.default_rng(11))
        expected = np.array(counts, dtype=float) ** 0.75
        expected /= expected.sum()
        np.testing.assert_allclose(sampler.probabilities, expected)

        draws = sampler.draw(1_000_000)
        frequencies = np.bincount(draws, minlength=4) / draws.size
        np.testing.assert_allclose(frequencies, expected, rtol=0.01)

    def test_sample_excludes_context(self):
        sampler = NegativeSampler([5, 1, 1], np.random.default_rng(0))
        negatives = sampler.sample(1000, exclude=0)
        assert len(negatives) == 1000
        assert 0 not in negatives

    def test_single_word_vocabulary(self):
        assert NegativeSampler([3], np.random.default_rng(0)).sample(5, exclude=0) == ()

    def test_rejects_empty_counts(self):
        with pytest.raises(ValueError):
            NegativeSampler([0, 0], np.random.default_rng(0))


class TestTraining:
    config = EmbeddingConfig(dim=10, bucket_count=500, epochs=5, seed=5, window=3)

    def test_vocabulary_order_and_min_count(self, logger):
        trainer = SkipgramTrainer(self.config.model_copy(update={"min_count": 2}), logger)
        words, counts = trainer.build_vocabulary([["b", "a", "b"], ["c", "a", "d", "b"]])
        assert words == ["b", "a"]
        assert counts == [3, 2]

    def test_single_precision_matrices(self, logger):
        model = train(toy_corpus(20), self.config, logger)
        assert model.input_vectors.dtype == np.float32
        assert model.output_vectors.dtype == np.float32
        bound = 1.0 / self.config.dim
        initial = SkipgramTrainer(self.config, logger).initialize(
            ["a", "b"], [2, 1], np.random.default_rng(0)
        )
        assert np.abs(initial.input_vectors).max() <= np.float32(bound)
        assert not initial.output_vectors.any()

    def test_empty_vocabulary(self, logger):
        trainer = SkipgramTrainer(self.config.model_copy(update={"min_count": 5}), logger)
        with pytest.raises(EmptyVocabularyError):
            trainer.train([["a", "b"]])

    def test_loss_decreases(self, logger):
        model = train(toy_corpus(), self.config, logger)
        assert len(model.training_history) == self.config.epochs
        assert model.training_history[-1] < model.training_history[0]

    def test_same_seed_same_model(self, logger):
        corpus = toy_corpus(60)
        first = train(corpus, self.config, logger)
        second = train(corpus, self.config, logger)
        assert np.array_equal(first.input_vectors, second.input_vectors)
        assert np.array_equal(first.output_vectors, second.output_vectors)

    def test_single_word_corpus(self, logger):
        trainer = SkipgramTrainer(self.config, logger)
        model = trainer.train([["hello"]])
        initial = trainer.initialize(["hello"], [1], np.random.default_rng(self.config.seed))
        assert model.training_history == [0.0] * self.config.epochs
        assert np.array_equal(model.input_vectors, initial.input_vectors)

    def test_parallel_training(self, logger):
        model = train(toy_corpus(60), self.config, logger, workers=2)
        assert np.isfinite(model.input_vectors).all()
        assert len(model.training_history) == self.config.epochs


class TestWordVectors:
    def test_in_vocabulary_sum(self):
        model = random_model()
        rows = model.subword_rows("bag")
        expected = model.input_vectors[rows].sum(axis=0)
        np.testing.assert_array_equal(model.word_vector("bag"), expected)
        assert rows[-1] == model.word_row(2)

    def test_gibberish_is_finite(self):
        vector = random_model().word_vector("qzxjvk")
        assert vector.shape == (8,)
        assert np.isfinite(vector).all()
        assert np.linalg.norm(vector) > 0

    def test_nearest_neighbors(self, make_model):
        model = make_model({"red": [1.0, 0.0], "crimson": [0.9, 0.1], "blue": [0.0, 1.0]})
        neighbors = model.nearest_neighbors("red", topn=2)
        assert [word for word, _ in neighbors] == ["crimson", "blue"]
        assert neighbors[1][1] == pytest.approx(0.0)

    def test_misspelled_variant_stays_near_its_word(self, logger):
        topics = [
            ["leather", "canvas", "cotton", "velvet"],
            ["crimson", "scarlet", "emerald", "indigo"],
            ["kilogram", "gram", "pound", "ounce"],
            ["cylinder", "pyramid", "sphere", "cube"],
        ]
        long_words = [
            (t, word) for t, words in enumerate(topics) for word in words if len(word) >= 6
        ]
        closer = 0
        for seed in range(20):
            rng = np.random.default_rng(seed)
            corpus = []
            for _ in range(200):
                words = topics[int(rng.integers(len(topics)))]
                corpus.append([words[int(i)] for i in rng.integers(len(words), size=6)])
            config = EmbeddingConfig(dim=16, bucket_count=2000, epochs=5, seed=seed)
            model = train(corpus, config, logger)

            topic, word = long_words[int(rng.integers(len(long_words)))]
            cut = int(rng.integers(2, len(word) - 2))
            variant = word[:cut] + word[cut + 1 :]
            others = [w for t, words in enumerate(topics) if t != topic for w in words]
            other = others[int(rng.integers(len(others)))]

            vector = model.word_vector(word)
            closer += cosine(vector, model.word_vector(variant)) > cosine(
                vector, model.word_vector(other)
            )
        assert closer >= 18

    def test_inconsistent_shapes(self):
        config = EmbeddingConfig(dim=2, bucket_count=3)
        with pytest.raises(ValueError):
            EmbeddingModel(config, ["a"], [1], np.zeros((1, 2)))


class TestVectorFiles:
    def test_round_trip(self, tmp_path, logger):
        model = train(toy_corpus(40), TestTraining.config, logger)
        path = tmp_path / "model.vec"
        save(model, path)
        loaded = load_pretrained(path)

        assert loaded.words == model.words
        assert loaded.config.bucket_count == model.config.bucket_count
        assert np.array_equal(loaded.input_vectors, model.input_vectors)
        assert np.array_equal(loaded.output_vectors, model.output_vectors)
        assert loaded.input_vectors.dtype == np.float32
        for word in ("red", "redd", "unseen"):
            assert np.array_equal(loaded.word_vector(word), model.word_vector(word))

    def test_glove_without_header(self, tmp_path):
        path = tmp_path / "glove.txt"
        path.write_text("red 0.1 0.2 0.3\nblue -1 0 1\n", encoding="utf-8")
        model = load_pretrained(path)

        assert model.words == ["red", "blue"]
        assert model.bucket_count == 0
        np.testing.assert_array_equal(model.word_vector("blue"), [-1.0, 0.0, 1.0])
        np.testing.assert_array_equal(model.word_vector("green"), np.zeros(3))

    def test_word2vec_header(self, tmp_path):
        path = tmp_path / "w2v.txt"
        path.write_text("2 3\nred 0.1 0.2 0.3\nblue -1 0 1\n", encoding="utf-8")
        assert load_pretrained(path).words == ["red", "blue"]

    def test_dimension_mismatch(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("2 3\nred 0.1 0.2 0.3\nblue -1 0\n", encoding="utf-8")
        with pytest.raises(VectorFormatError) as error:
            load_pretrained(path)
        assert error.value.line_number == 3

    def test_count_mismatch(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("3 3\nred 0.1 0.2 0.3\nblue -1 0 1\n", encoding="utf-8")
        with pytest.raises(VectorFormatError, match="declares 3"):
            load_pretrained(path)
