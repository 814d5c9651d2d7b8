"""Embedding file generation for the summary evaluation toolkit."""

from .encoders import HashEncoder, HFEncoder, ModelLoadError, make_encoder
from .export import ExportJob, export_embeddings
from .textprep import (
    CorpusDocument,
    MalformedCorpus,
    normalize,
    read_corpus,
    split_sentences,
    tokenize,
)

__version__ = "0.1.0"
