"""Rewrite the golden corpus from the library constructors.

    python3 tests/golden/regenerate.py

Only run this after a deliberate format change; the round-trip tests compare
against the committed files byte for byte.
"""
from pathlib import Path

from hypergroups import Hypergroup, chain_hypergroup, coset_space, cyclic_group, direct_sum, symmetric_group, trivial
from hypergroups.construct import subcarrier
from hypergroups.textio import serialize_hypergroup

HERE = Path(__file__).parent


def corpus():
    K2 = Hypergroup([[1, 2], [2, 3]], [0, 1], ["1", "g"], "K2")
    S3 = symmetric_group(3)
    C = coset_space(S3, subcarrier(S3, ["e", "p102"]), check=False).renamed("S3modH")
    S, _ = direct_sum([K2, K2], "K2sumK2")
    return {
        "t.hg": trivial(),
        "z2.hg": cyclic_group(2),
        "k2.hg": K2,
        "v3.hg": chain_hypergroup(2),
        "s3.hg": S3,
        "s3_coset.hg": C,
        "k2_sum_k2.hg": S,
    }


if __name__ == "__main__":
    for name, G in corpus().items():
        (HERE / name).write_text(serialize_hypergroup(G), encoding="utf-8")
        print("wrote", name)
