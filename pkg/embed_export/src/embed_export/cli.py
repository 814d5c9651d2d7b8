"""embed-export command line.

    embed-export --corpus docs.jsonl --model hash-64 --kind token --out tokens.emb
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .encoders import ModelLoadError
from .export import KINDS, POOLINGS, ExportJob, export_embeddings
from .textprep import MalformedCorpus


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="embed-export",
        description="Write token or sentence embedding files from a corpus.",
    )
    parser.add_argument("--corpus", required=True, help="documents JSONL")
    parser.add_argument("--model", required=True,
                        help="'hash-<dim>' or a Hugging Face model name")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--out", required=True, help="output embedding file")
    parser.add_argument("--pooling", default="mean", choices=POOLINGS)
    args = parser.parse_args(argv)

    job = ExportJob(
        corpus=Path(args.corpus),
        model=args.model,
        output=Path(args.out),
        kind=args.kind,
        pooling=args.pooling,
    )
    try:
        out = export_embeddings(job)
    except ModelLoadError as exc:
        print(f"error[MODEL_LOAD]: {exc}", file=sys.stderr)
        return 2
    except MalformedCorpus as exc:
        print(f"error[MALFORMED_CORPUS]: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error[IO_ERROR]: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
