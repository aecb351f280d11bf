# coding: utf-8

# # Reproducible command line runs
#
# Each run writes its data plus the resolved config. Outputs do not depend on
# the worker count, so byte comparison is a valid regression check.

import hashlib
import tempfile
from pathlib import Path

from subgroup_sums.cli import main

out = Path(tempfile.mkdtemp(prefix="cli-"))


def run(*args, workers=1):
    target = out / f"run-{len(list(out.iterdir()))}"
    code = main([*args, "--workers", str(workers), "--out", str(target)])
    return code, hashlib.sha256(target.read_bytes()).hexdigest()[:16]


cmd = ("sums", "--d", "5", "--m", "1,-1", "--q", "1901", "--range", "subgroup:950,fixed:1")
print(run(*cmd, workers=1), run(*cmd, workers=4))

cmd = ("equidist", "--d", "3", "--m", "1,-1", "--q", "643", "--range", "full,full", "--mc", "200000", "--seed", "3")
print(run(*cmd, workers=1), run(*cmd, workers=4))

# Exit codes: 3 for an inadmissible modulus, 2 for a malformed request.
print("q=8:", main(["sums", "--d", "3", "--q", "8"]))
print("d=1 hypocycloid:", main(["geometry", "--hypocycloid", "1"]))
