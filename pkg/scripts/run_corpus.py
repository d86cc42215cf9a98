"""Run the randomized consistency checks on a generated corpus and print a
per-check summary (failures, timing) plus basic corpus statistics."""

import argparse
import dataclasses
import time
from collections import Counter

from mpres import corpus
from mpres.chains import homology_module

CHECKS = {
    "resolutions": corpus.check_resolutions,
    "decomposition": corpus.check_decomposition_law,
    "syzygies": corpus.check_syzygy_completeness,
    "stabilization": corpus.check_stabilization,
    "euler": corpus.check_euler,
    "free-criterion": corpus.check_free_criterion,
}


def stats(fs):
    dims = Counter(f.dim for f in fs)
    sizes = [len(f) for f in fs]
    nontrivial = sum(1 for f in fs if any(not homology_module(f, n).is_zero()
                                          for n in range(1, f.dim + 1)))
    print("filtrations: %d, simplices min/mean/max %d/%.1f/%d" % (
        len(fs), min(sizes), sum(sizes) / len(sizes), max(sizes)))
    print("dimension histogram: %s" % dict(sorted(dims.items())))
    print("with nonzero higher homology somewhere: %d" % nontrivial)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    defaults = corpus.CorpusConfig()
    for fld in dataclasses.fields(defaults):
        if fld.name == "rs":
            continue
        p.add_argument("--" + fld.name.replace("_", "-"), type=int,
                       default=getattr(defaults, fld.name))
    p.add_argument("--rs", type=int, nargs="+", default=list(defaults.rs))
    p.add_argument("--checks", nargs="+", choices=sorted(CHECKS), default=sorted(CHECKS))
    p.add_argument("--syzygy-max-simplices", type=int, default=12)
    a = p.parse_args()
    cfg = corpus.CorpusConfig(**{fld.name: getattr(a, fld.name)
                                 for fld in dataclasses.fields(defaults) if fld.name != "rs"},
                              rs=tuple(a.rs))
    print(cfg)
    fs = corpus.random_corpus(cfg)
    stats(fs)
    total = 0
    for name in a.checks:
        subset = fs if name != "syzygies" else [f for f in fs
                                                if len(f) <= a.syzygy_max_simplices]
        t = time.perf_counter()
        fails = [(k, m) for k, f in enumerate(subset) for m in CHECKS[name](f)]
        total += len(fails)
        print("%-15s %4d filtrations  %4d failures  %.2fs" % (
            name, len(subset), len(fails), time.perf_counter() - t))
        for k, m in fails[:5]:
            print("    #%d %s" % (k, m))
    raise SystemExit(1 if total else 0)


if __name__ == "__main__":
    main()
