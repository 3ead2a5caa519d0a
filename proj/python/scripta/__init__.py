"""Python bindings for the scripta character recognition core."""

import json as _json

from ._core import (
    BLOCK_COLS,
    BLOCK_ROWS,
    BlockTooSmall,
    Corpus,
    Error,
    FeedForwardNet,
    Model,
    binarize,
    extract_pattern,
    generate_synthetic,
    glyph_template,
    ingest_sheet,
    load_model,
    otsu_threshold,
    parse_pgm,
    render_sheet,
    split,
    train_model,
    train_net,
    write_pgm,
)


def evaluate(model, corpus):
    """Evaluation report of `model` on `corpus` as a dict."""
    return _json.loads(model.evaluate(corpus))


__all__ = [name for name in dir() if not name.startswith("_")]
