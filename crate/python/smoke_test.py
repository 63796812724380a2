"""Smoke test for the qkz extension module.

Build and install first:
    pip install --no-build-isolation ./crates/py
"""

import qkz


def main():
    pats = qkz.link_patterns(6)
    assert [p.word for p in pats] == ["((()))", "(()())", "(())()", "()(())", "()()()"]
    rainbow = qkz.LinkPattern([6, 5, 4, 3, 2, 1])
    assert rainbow == pats[0] and rainbow.boxes == 3
    image, weight = qkz.LinkPattern([2, 1, 4, 3]).apply_e(1)
    assert image.word == "()()" and weight == [0, 1]

    v = qkz.psi(6)
    assert len(v) == 5
    assert v.get("((()))") == [0, 0, 0, 1]
    assert v.get("()()()") == [1, 0, 5, 0, 4, 0, 1]
    ok, checks = v.check()
    assert ok, [c for c in checks if not c[1]]

    odd = qkz.psi(5)
    assert sum(sum(c) for _, c in odd.components) == 11

    s = qkz.sum_rule(3, "even")
    assert s.direct == s.determinant
    assert s.specializations["t=1/tau"] == [6, 0, 13, 0, 6, 0, 1]
    assert qkz.sum_rule(2, "odd").convention.startswith("complementary")

    assert qkz.constant_term([1, 2], "even") == [0, 1]
    assert len(qkz.basis_matrix(3)) == 5
    assert [qkz.vsasm_count(s) for s in (3, 5, 7)] == [1, 3, 26]
    assert qkz.oracle_constant(3) == "q^4 - 2q^6 + q^8"

    ok, checks = qkz.verify(2, ["tl", "tilings"])
    assert ok and checks

    try:
        qkz.psi(1)
    except ValueError:
        pass
    else:
        raise AssertionError("size 1 should be rejected")

    print(f"qkz {qkz.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
