#!/usr/bin/env python3
"""Convert the Tecator spectra to the CSV layout read by `fqreg tecator`.

Output: header `850,852,...,1048,fat`, then one row per sample with the 100
absorbances and the fat percentage.

Two inputs are understood:

  * the StatLib archive file `tecator` (http://lib.stat.cmu.edu/datasets/tecator).
    Every line consisting only of numbers is data; the numbers form records of
    125 values: 100 absorbances, 22 principal components, moisture, fat,
    protein.
  * the `.ts` time-series files distributed with sktime / the Monash regression
    archive (Tecator_TRAIN.ts, Tecator_TEST.ts): `a1,...,a100:fat` per line.

Usage: tecator_to_csv.py OUT.csv INPUT [INPUT ...]
"""

import sys

WAVELENGTHS = [850 + 2 * i for i in range(100)]


def is_number(token):
    try:
        float(token)
        return True
    except ValueError:
        return False


def read_statlib(path):
    numbers = []
    with open(path) as f:
        for line in f:
            tokens = line.split()
            if tokens and all(is_number(t) for t in tokens):
                numbers.extend(float(t) for t in tokens)
    if len(numbers) % 125:
        raise SystemExit(f"{path}: {len(numbers)} numbers is not a multiple of 125")
    for k in range(0, len(numbers), 125):
        rec = numbers[k:k + 125]
        yield rec[:100], rec[123]


def read_ts(path):
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith(("#", "@")):
                continue
            values, target = line.rsplit(":", 1)
            spectrum = [float(v) for v in values.split(",")]
            if len(spectrum) != 100:
                raise SystemExit(f"{path}: expected 100 absorbances, got {len(spectrum)}")
            yield spectrum, float(target)


def main(argv):
    if len(argv) < 3:
        raise SystemExit(__doc__)
    rows = []
    for path in argv[2:]:
        reader = read_ts if path.endswith(".ts") else read_statlib
        rows.extend(reader(path))
    with open(argv[1], "w", newline="\n") as out:
        out.write(",".join(str(w) for w in WAVELENGTHS) + ",fat\n")
        for spectrum, fat in rows:
            out.write(",".join(repr(v) for v in spectrum) + f",{fat!r}\n")
    print(f"wrote {len(rows)} samples to {argv[1]}")


if __name__ == "__main__":
    main(sys.argv)
