"""Smoke test for the pysympunct extension module.

Build and install first:  pip install --no-build-isolation ./crates/python
"""

import pysympunct as sp


def main():
    c = sp.StabilizerCode.fixture("qutrit_5_2_2")
    assert (c.p, c.n, c.k) == (3, 5, 2), c
    assert len(c.stabilizer()) == 3 and len(c.extension()) == 4

    r = c.distance(workers=1)
    assert r["d"] == 2 and r["complete"]

    # puncturing the first position with (1|1) keeps the distance, (0|1) does not
    assert c.puncture(0, 1, 1).distance()["d"] == 2
    assert c.puncture(0, 0, 1).distance()["d"] == 1
    assert c.puncture(0, 2, 2) == c.puncture(0, 1, 1)

    words = c.min_weight_words()["words"]
    assert all(sum(1 for i in range(5) if w[i] or w[5 + i]) == 2 for w in words)

    for index, pair, guaranteed in c.search_avoid():
        assert c.puncture(index, *pair).distance()["d"] >= guaranteed

    again = sp.StabilizerCode.parse(c.to_text())
    assert again == c and again.hash() == c.hash()

    reduced, trace = c.griesmer_reduce()
    assert (reduced.n, reduced.k) == (3, 1)
    assert trace["reduced_d"] >= trace["guaranteed_d"]
    assert sp.griesmer_bound(5, 2, 2, 3) == (3, True)

    h = c.enumerate_punctures(1)
    assert h["total_codes"] == 20 and sum(h["buckets"].values()) == 20

    assert len(sp.orbit_reps(21, 2)) == 10

    try:
        c.puncture(7, 1, 1)
    except IndexError:
        pass
    else:
        raise AssertionError("out-of-range index accepted")

    print("pysympunct smoke test passed:", c, "->", reduced)


if __name__ == "__main__":
    main()
