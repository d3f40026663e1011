#!/usr/bin/env python3
"""Download the SNAP datasets used by the acceptance suite into data/.

Run from anywhere with network access:

    python3 scripts/fetch_datasets.py            # ca-HepPh only (~5 MB)
    python3 scripts/fetch_datasets.py --amazon   # + com-Amazon (~1 GB inflated)

The test suite looks for the files in <repo>/data or in $NISE_DATA and
skips dataset-bound checks, with a notice, when they are absent.
"""

import argparse
import os
import sys
import urllib.request

BASE = "https://snap.stanford.edu/data"

CORE = {
    "ca-HepPh.txt.gz": f"{BASE}/ca-HepPh.txt.gz",
}

AMAZON = {
    "com-amazon.ungraph.txt.gz":
        f"{BASE}/bigdata/communities/com-amazon.ungraph.txt.gz",
    "com-amazon.all.dedup.cmty.txt.gz":
        f"{BASE}/bigdata/communities/com-amazon.all.dedup.cmty.txt.gz",
}


def fetch(url, dest):
    if os.path.exists(dest):
        print(f"have {dest}")
        return
    print(f"fetching {url} -> {dest}")
    tmp = dest + ".part"
    with urllib.request.urlopen(url) as resp, open(tmp, "wb") as out:
        while True:
            chunk = resp.read(1 << 20)
            if not chunk:
                break
            out.write(chunk)
    os.replace(tmp, dest)
    print(f"  {os.path.getsize(dest)} bytes")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--amazon", action="store_true",
                    help="also fetch the com-Amazon graph and communities")
    ap.add_argument("--dest", default=None,
                    help="target directory (default <repo>/data)")
    args = ap.parse_args()
    dest = args.dest or os.path.join(
        os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")
    os.makedirs(dest, exist_ok=True)
    files = dict(CORE)
    if args.amazon:
        files.update(AMAZON)
    for name, url in files.items():
        try:
            fetch(url, os.path.join(dest, name))
        except OSError as exc:
            print(f"FAILED {name}: {exc}", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
