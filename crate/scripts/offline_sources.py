#!/usr/bin/env python3
"""Rebuild the raw UCI files from copies shipped inside Python packages.

Use this when archive.ics.uci.edu is unreachable. It writes

    <out>/ionosphere.data   (from the Orange3 wheel's test datasets)
    <out>/wdbc.data         (from scikit-learn's bundled breast_cancer.csv)

in the original UCI layouts, after which

    awfk fetch-data --source-dir <out>

imports them and verifies the pinned checksums of the normalized CSVs.
The wdbc sample ids are not shipped with scikit-learn; sequential
placeholders are written instead (the importer drops that column).
"""

import argparse
import csv
import glob
import io
import os
import subprocess
import sys
import tempfile
import zipfile


def ionosphere(out_dir):
    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run(
            [sys.executable, "-m", "pip", "download", "--no-deps", "-q", "orange3", "-d", tmp],
            check=True,
        )
        wheel = glob.glob(os.path.join(tmp, "orange3-*.whl"))[0]
        with zipfile.ZipFile(wheel) as z:
            text = z.read("Orange/tests/datasets/ionosphere.tab").decode()
    lines = text.splitlines()[3:]  # names, types, flags
    with open(os.path.join(out_dir, "ionosphere.data"), "w") as f:
        for line in lines:
            if line.strip():
                f.write(",".join(line.split("\t")) + "\n")


def wdbc(out_dir):
    import sklearn

    src = os.path.join(os.path.dirname(sklearn.__file__), "datasets", "data", "breast_cancer.csv")
    with open(src) as f:
        rows = list(csv.reader(f))[1:]  # first line is "n_samples,n_features,names..."
    with open(os.path.join(out_dir, "wdbc.data"), "w") as f:
        for i, row in enumerate(rows):
            diagnosis = "M" if row[-1] == "0" else "B"
            f.write(",".join([str(i + 1), diagnosis] + row[:-1]) + "\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("out_dir")
    args = ap.parse_args()
    os.makedirs(args.out_dir, exist_ok=True)
    ionosphere(args.out_dir)
    wdbc(args.out_dir)


if __name__ == "__main__":
    main()
