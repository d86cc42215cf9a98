"""Walk through the CZ example: decompositions, syzygies, the cone
resolutions of H_0 and H_1 and their minimizations."""

from pathlib import Path

from mpres.chains import (format_decomposition, fundamental_elements, homology_module,
                          syzygy_binomials)
from mpres.filtration import parse
from mpres.gridmodule import betti_numbers
from mpres.resolution import minimize, resolve_homology, verify_resolution

CZ = Path(__file__).resolve().parent.parent / "tests" / "data" / "cz.mfil"


def main():
    f = parse(CZ.read_text())
    for n in range(f.dim + 1):
        data = fundamental_elements(f, n)
        print(format_decomposition(data))
        for z in syzygy_binomials(data):
            print("    syzygy at %s: %s" % (z.c, z))
    for n in range(f.dim + 1):
        res = resolve_homology(f, n)
        print("\nH_%d cone resolution: %s" % (n, res.summary()))
        print("    verify: %s" % verify_resolution(res))
        m = minimize(res)
        print("    minimized:        %s" % m.summary())
        print("    matches grid Betti numbers: %s"
              % (m.betti_table() == betti_numbers(homology_module(f, n))))


if __name__ == "__main__":
    main()
