import numpy as np
import pytest

import scripta


def test_pgm_round_trip():
    rng = np.random.default_rng(3)
    img = rng.integers(0, 256, size=(7, 11), dtype=np.uint8)
    for ascii_ in (True, False):
        data = scripta.write_pgm(img, ascii=ascii_)
        assert data[:2] == (b"P2" if ascii_ else b"P5")
        assert np.array_equal(scripta.parse_pgm(data), img)


def test_bad_pgm_raises():
    with pytest.raises(scripta.Error, match="MalformedHeader"):
        scripta.parse_pgm(b"P7\n1 1\n255\n\x00")


def test_binarize_and_otsu():
    img = np.array([[10, 200], [30, 220]], dtype=np.uint8)
    assert scripta.otsu_threshold(img) > 30
    assert scripta.binarize(img, "otsu").tolist() == [[1, 0], [1, 0]]
    assert scripta.binarize(img, 20).tolist() == [[1, 0], [0, 0]]


def test_extract_pattern_shape_and_errors():
    block, report = scripta.extract_pattern(np.pad(scripta.glyph_template("A"), 3))
    assert block.shape == (scripta.BLOCK_ROWS, scripta.BLOCK_COLS)
    assert set(report) >= {"rows_removed_top", "cols_removed_right"}
    with pytest.raises(scripta.BlockTooSmall, match="25x20"):
        scripta.extract_pattern(np.ones((10, 30), dtype=np.uint8))
    assert issubclass(scripta.BlockTooSmall, scripta.Error)


def test_net_learns_xor_and_round_trips():
    net = scripta.FeedForwardNet.random(2, 4, 1, seed=1)
    x = [[0, 0], [0, 1], [1, 0], [1, 1]]
    t = [[0], [1], [1], [0]]
    trained, trace = scripta.train_net(net, x, t, max_epochs=20000, seed=1)
    assert trace["converged"]
    assert trace["epochs_run"] == len(trace["epoch_mse"])
    assert [round(trained.predict(v)[0]) for v in x] == [0, 1, 1, 0]
    assert scripta.FeedForwardNet.load(trained.save()) == trained


def test_corpus_split_and_sheet_round_trip():
    corpus = scripta.generate_synthetic(3, flip=0.02, jitter=1, seed=5)
    assert len(corpus) == 78 and corpus.rows == 3
    assert scripta.Corpus.load(corpus.save()) == corpus
    train, test = scripta.split(corpus, 2, 1)
    assert (len(train), len(test)) == (52, 26)
    back, skipped = scripta.ingest_sheet(scripta.render_sheet(corpus), rows=3)
    assert skipped == [] and back == corpus


@pytest.mark.parametrize("kind", ["direct", "correlation", "hierarchical"])
def test_train_recognize_save_load(kind, tmp_path):
    corpus = scripta.generate_synthetic(3)
    train, test = scripta.split(corpus, 2, 1)
    model = scripta.train_model(train, kind, hidden=16, max_epochs=2000)
    assert model.kind == kind
    report = scripta.evaluate(model, test)
    assert report["samples"] == 26
    assert report["overall_accuracy"] == 1.0

    result = model.recognize(scripta.glyph_template("R"))
    assert result["letter"] == "R"
    if kind == "hierarchical":
        assert result["group"] == 5

    model.save(tmp_path / "m")
    loaded = scripta.load_model(tmp_path / "m")
    for _, _, block in test.samples():
        assert loaded.recognize(block)["scores"] == model.recognize(block)["scores"]


def test_invalid_grouping():
    train, _ = scripta.split(scripta.generate_synthetic(3), 2, 1)
    with pytest.raises(scripta.Error, match="InvalidGrouping"):
        scripta.train_model(train, "hierarchical", grouping="A,B\nC\n")
