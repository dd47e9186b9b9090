"""
Horn CNF 測試
"""

import numpy as np
import pytest


def _random_definite(n: int, m: int, seed: int):
    from posimod.horn import DEFINITE_HORN, Clause, HornCnf

    rng = np.random.default_rng(seed)
    clauses = []
    for _ in range(m):
        head = int(rng.integers(0, n))
        body = [v for v in range(n) if v != head and rng.random() < 0.3]
        clauses.append(Clause.of([head], body))
    return HornCnf(tuple(clauses), DEFINITE_HORN)


class TestClause:
    """子句測試"""

    def test_satisfied_by(self):
        """測試子句求值"""
        from posimod.horn import Clause

        clause = Clause.of([0, 1], [2])

        assert str(clause) == "(x0 | x1 | ~x2)"
        assert not clause.satisfied_by(0b100)
        assert clause.satisfied_by(0b101)
        assert clause.satisfied_by(0)

    def test_invalid_clauses(self):
        """測試空子句與互補字面"""
        from posimod.errors import StructureError
        from posimod.horn import Clause

        with pytest.raises(StructureError):
            Clause(0, 0)
        with pytest.raises(StructureError):
            Clause(0b1, 0b1)

    def test_form_validation(self):
        """測試宣告形式與子句形狀不符"""
        from posimod.errors import StructureError
        from posimod.horn import DEFINITE_HORN, DUAL_HORN, Clause, HornCnf

        with pytest.raises(StructureError):
            HornCnf((Clause.of([0], [1, 2]),), DUAL_HORN)
        with pytest.raises(StructureError):
            HornCnf((Clause.of([0, 1], [2]),), DEFINITE_HORN)
        with pytest.raises(StructureError):
            HornCnf((), "horn")


class TestPhi:
    """由 𝒰 建立 CNF 的測試"""

    def test_build_phi(self):
        """測試每個 U 產生 |U| 個子句"""
        from posimod.horn import DUAL_HORN, Clause, build_phi

        phi = build_phi([0b111], 3)

        assert phi.form == DUAL_HORN
        assert phi.clauses == (Clause(0b110, 0b001), Clause(0b101, 0b010), Clause(0b011, 0b100))
        assert len(build_phi([0b011, 0b110, 0b1000], 4)) == 5

    def test_phi_rejects_exactly_one_member(self):
        """測試 φ(X) 為假 ⇔ 某個 U 與 X 恰好交於一個元素"""
        from posimod.horn import build_phi, eval_cnf
        from posimod.subsets import popcount

        family = [0b0111, 0b1100]
        phi = build_phi(family, 4)
        for x in range(16):
            expected = all(popcount(u & x) != 1 for u in family)
            assert eval_cnf(phi, x) == expected

    def test_invalid_family(self):
        """測試空集合或超出範圍的成員"""
        from posimod.errors import StructureError
        from posimod.horn import build_phi

        with pytest.raises(StructureError):
            build_phi([0], 3)
        with pytest.raises(StructureError):
            build_phi([0b1000], 3)

    def test_complement(self):
        """測試 eval(complement, X) = eval(φ, V∖X)"""
        from posimod.horn import DEFINITE_HORN, build_phi, complement_cnf, eval_cnf

        phi = build_phi([0b0111, 0b1100, 0b1010], 4)
        psi = complement_cnf(phi)

        assert psi.form == DEFINITE_HORN
        for x in range(16):
            assert eval_cnf(psi, x) == eval_cnf(phi, 0b1111 ^ x)

    def test_complement_requires_one_negative(self):
        """測試沒有負字面的 dual Horn 子句無法轉換"""
        from posimod.errors import StructureError
        from posimod.horn import DUAL_HORN, Clause, HornCnf, complement_cnf

        with pytest.raises(StructureError):
            complement_cnf(HornCnf((Clause.of([0, 1], []),), DUAL_HORN))


class TestForwardChaining:
    """FCP 與封閉集合測試"""

    def test_chain(self):
        """測試 x0 → x1 → x2"""
        from posimod.horn import DEFINITE_HORN, Clause, HornCnf, fcp

        cnf = HornCnf((Clause.of([1], [0]), Clause.of([2], [1])), DEFINITE_HORN)

        assert fcp(cnf, 0b001) == 0b111
        assert fcp(cnf, 0b010) == 0b110
        assert fcp(cnf, 0) == 0

    def test_facts(self):
        """測試沒有負字面的子句直接觸發"""
        from posimod.horn import DEFINITE_HORN, Clause, HornCnf, fcp

        cnf = HornCnf((Clause.of([2], []), Clause.of([0], [2])), DEFINITE_HORN)
        assert fcp(cnf, 0) == 0b101

    def test_least_fixed_point(self):
        """測試 FCP 是包含 seed 的最小滿足集合"""
        from posimod.horn import eval_cnf, fcp
        from posimod.subsets import is_subset

        n = 6
        for seed in range(5):
            cnf = _random_definite(n, 8, seed)
            models = [q for q in range(1 << n) if eval_cnf(cnf, q)]
            for t in range(0, 1 << n, 5):
                closure = fcp(cnf, t)
                assert is_subset(t, closure)
                assert eval_cnf(cnf, closure)
                assert all(is_subset(closure, q) for q in models if is_subset(t, q))

    def test_requires_definite(self):
        """測試非 definite Horn 的 CNF"""
        from posimod.errors import StructureError
        from posimod.horn import build_phi, fcp

        with pytest.raises(StructureError):
            fcp(build_phi([0b11], 2), 0)

    def test_enumerate_closures(self):
        """測試封閉集合列舉與去重"""
        from posimod.horn import DEFINITE_HORN, HornCnf, build_phi, complement_cnf, enumerate_closures

        assert enumerate_closures(HornCnf((), DEFINITE_HORN), 3, 1) == [0, 1, 2, 4]

        psi = complement_cnf(build_phi([0b111], 3))
        assert enumerate_closures(psi, 3, 2) == [0, 1, 2, 4, 7]


class TestDimacs:
    """DIMACS 讀寫測試"""

    def test_to_dimacs(self):
        """測試輸出格式"""
        from posimod.horn import DEFINITE_HORN, Clause, HornCnf

        cnf = HornCnf((Clause.of([1], [0]), Clause.of([2], [0, 1])), DEFINITE_HORN)

        assert cnf.to_dimacs(3) == "c form definite_horn\np cnf 3 2\n2 -1 0\n3 -1 -2 0\n"

    def test_from_dimacs_infers_form(self):
        """測試依子句形狀推斷形式"""
        from posimod.horn import DEFINITE_HORN, DUAL_HORN, GENERAL, HornCnf, fcp

        definite = HornCnf.from_dimacs("p cnf 3 2\n2 -1 0\n3 -2 0\n")
        assert definite.form == DEFINITE_HORN
        assert fcp(definite, 0b001) == 0b111

        assert HornCnf.from_dimacs("p cnf 3 1\n1 2 -3 0\n").form == DUAL_HORN
        assert HornCnf.from_dimacs("p cnf 2 2\n1 2 0\n-1 -2 0\n").form == GENERAL

    def test_declared_form_is_kept(self):
        """測試註解中宣告的形式"""
        from posimod.horn import DUAL_HORN, HornCnf, build_phi

        phi = build_phi([0b011, 0b110], 3)
        parsed = HornCnf.from_dimacs(phi.to_dimacs(3))

        assert parsed.form == DUAL_HORN
        assert parsed.clauses == phi.clauses

    def test_bad_dimacs(self):
        """測試無法解析的內容"""
        from posimod.errors import StructureError
        from posimod.horn import HornCnf

        with pytest.raises(StructureError):
            HornCnf.from_dimacs("p dnf 2 1\n1 0\n")
        with pytest.raises(StructureError):
            HornCnf.from_dimacs("p cnf 2 1\n1 x 0\n")
