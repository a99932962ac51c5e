"""Write the scikit-image fallback corpus as PGM files: export_corpus.py OUTDIR"""

import sys
from pathlib import Path

from saalab.corpus import skimage_corpus
from saalab.pgm import write_pgm


def main(outdir: str) -> None:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, img in skimage_corpus():
        write_pgm(out / f"{name}.pgm", img)
        print(out / f"{name}.pgm")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "corpus")
