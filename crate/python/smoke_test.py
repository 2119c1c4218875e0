"""Smoke test for the towerbs_py extension.

Build and run from the repository root:

    cargo build --release -p towerbs-py --features extension-module
    cp target/release/libtowerbs_py.so python/towerbs_py.so
    python3 python/smoke_test.py
"""

import json
import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import towerbs_py as tb


def main():
    k = tb.Field("x^6+x^4-4x^3-7x^2-x+1")
    assert k.disc == -23 * 35509
    assert k.signature == (4, 1)
    assert abs(k.norm("-9xi^5+6xi^4-13xi^3+44xi^2+31xi-12")) == 7
    assert k.prime_ideal("-6xi^5+4xi^4-9xi^3+30xi^2+21xi-7").startswith("(3,")

    eta = "-671xi^5+467xi^4-994xi^3+3360xi^2+2314xi-961"
    K = tb.Extension(k, eta)
    assert K.kind == "totally_complex"
    assert K.t == 8
    assert abs(K.genus - 25.3490) < 5e-5
    tally = K.splitting(20)
    assert tally[7] == 1 and tally[13] == 1 and tally[19] == 2

    assert tb.bs_ratio({}) == 1.0
    assert abs(tb.bs_ratio({"C": 0.23669}) - 0.56498) < 1e-4
    assert abs(tb.basic_inequality_lhs({"C": 0.22687}) - 0.86246) < 1e-4
    try:
        tb.bs_ratio({"7": -0.1})
    except ValueError:
        pass
    else:
        raise AssertionError("negative phi accepted")

    r1 = json.loads(tb.verify_example(1))
    assert r1["overall"] == "PASS", r1["first_failure"]
    bsu = next(s for s in r1["steps"] if s["name"] == "BSU")
    assert math.isclose(float(bsu["computed"]), 0.59748, abs_tol=1e-3)

    r2 = json.loads(tb.verify_example(2))
    assert r2["first_failure"] == "BSU"
    assert r2["deviations"]

    assert "0.5649-0.5975" in tb.table()
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
