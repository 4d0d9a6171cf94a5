#!/usr/bin/env python3
"""Fetch the public 82-vehicle fuel-consumption dataset used by the
regression scenario and write it to data/mileage82.csv.

The file comes from Edgar Acuna's public teaching datasets
(http://academic.uprm.edu/eacuna/datos.html). The tool itself never
touches the network, so this helper script does the download once; the
acceptance suite picks the CSV up automatically afterwards.

If the primary URLs move, download the table manually, keep the column
names (mpg, vol, hp, sp, wt), and save it as data/mileage82.csv.
"""
import csv
import os
import sys
import urllib.request

CANDIDATES = [
    "http://academic.uprm.edu/eacuna/millaje.txt",
    "http://academic.uprm.edu/eacuna/millaje.dat",
    "http://academic.uprm.edu/eacuna/datos/millaje.txt",
]

EXPECTED_COLUMNS = {"mpg", "vol", "hp", "sp", "wt"}


def normalize(text):
    """Whitespace- or comma-separated table with a header -> list of rows."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    sep = "," if "," in lines[0] else None
    header = [c.strip().lower() for c in lines[0].split(sep)]
    if not EXPECTED_COLUMNS.issubset(set(header)):
        raise ValueError(f"unexpected header: {header}")
    rows = []
    for ln in lines[1:]:
        fields = ln.split(sep)
        if len(fields) != len(header):
            raise ValueError(f"malformed row: {ln!r}")
        rows.append([float(f) for f in fields])
    return header, rows


def main():
    out_path = os.path.join(os.path.dirname(__file__), "..", "data",
                            "mileage82.csv")
    out_path = os.path.normpath(out_path)
    last_error = None
    for url in CANDIDATES:
        try:
            print(f"trying {url} ...")
            with urllib.request.urlopen(url, timeout=30) as resp:
                text = resp.read().decode("utf-8", errors="replace")
            header, rows = normalize(text)
            if len(rows) != 82:
                print(f"  warning: expected 82 rows, found {len(rows)}")
            os.makedirs(os.path.dirname(out_path), exist_ok=True)
            with open(out_path, "w", newline="") as f:
                w = csv.writer(f)
                w.writerow(header)
                w.writerows(rows)
            print(f"wrote {out_path} ({len(rows)} rows)")
            return 0
        except Exception as e:  # noqa: BLE001 - report and try the next URL
            last_error = e
            print(f"  failed: {e}")
    print(f"could not fetch the dataset: {last_error}", file=sys.stderr)
    print("download it manually and save as data/mileage82.csv",
          file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
