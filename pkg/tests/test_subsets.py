"""
子集合與設定測試
"""

import pytest


class TestGroundSet:
    """基礎集合測試"""

    def test_full_and_complement(self):
        """測試整個 V 與補集"""
        from posimod.subsets import GroundSet

        ground = GroundSet(4)
        assert ground.full == 0b1111
        assert ground.complement(0b0101) == 0b1010

    def test_labels(self):
        """測試元素名稱與顯示"""
        from posimod.subsets import GroundSet

        ground = GroundSet(3, ["a", "b", "c"])
        assert ground.labels == ("a", "b", "c")
        assert ground.format(0b101) == "{a,c}"
        assert GroundSet(3).format(0b110) == "{1,2}"

    def test_invalid_ground_sets(self):
        """測試不合法的基礎集合"""
        from posimod.errors import InvalidSubsetError
        from posimod.subsets import GroundSet

        with pytest.raises(InvalidSubsetError):
            GroundSet(0)
        with pytest.raises(InvalidSubsetError):
            GroundSet(25)
        with pytest.raises(InvalidSubsetError):
            GroundSet(2, ["a", "a"])
        with pytest.raises(InvalidSubsetError):
            GroundSet(2, ["a"])

    def test_check_rejects_outside_bits(self):
        """測試超出 n 的遮罩"""
        from posimod.errors import InvalidSubsetError
        from posimod.subsets import GroundSet

        ground = GroundSet(3)
        assert ground.check(0b111) == 0b111
        with pytest.raises(InvalidSubsetError):
            ground.check(0b1000)
        with pytest.raises(InvalidSubsetError):
            ground.mask([0, 3])

    def test_invalid_subset_is_value_error(self):
        """測試錯誤型別同時是 ValueError"""
        from posimod.errors import InvalidSubsetError, PosimodError

        assert issubclass(InvalidSubsetError, ValueError)
        assert issubclass(InvalidSubsetError, PosimodError)


class TestMaskHelpers:
    """遮罩運算測試"""

    def test_members_and_mask_of(self):
        """測試元素與遮罩互轉"""
        from posimod.subsets import mask_of, members, popcount

        assert members(0b10110) == [1, 2, 4]
        assert mask_of([1, 2, 4]) == 0b10110
        assert popcount(0b10110) == 3
        assert members(0) == []

    def test_format_mask(self):
        """測試子集合的文字表示"""
        from posimod.subsets import GroundSet, format_mask

        assert format_mask(0b101) == "{0,2}"
        assert format_mask(0) == "{}"
        assert format_mask(0b110, ["a", "b", "c"]) == "{b,c}"
        assert GroundSet(3, ["a", "b", "c"]).format(0b011) == "{a,b}"

    def test_masks_of_size_order(self):
        """測試 Gosper 列舉依整數遞增"""
        from posimod.subsets import masks_of_size

        assert list(masks_of_size(4, 2)) == [3, 5, 6, 9, 10, 12]
        assert list(masks_of_size(4, 0)) == [0]
        assert list(masks_of_size(3, 4)) == []
        assert len(list(masks_of_size(10, 5))) == 252

    def test_masks_up_to(self):
        """測試依大小再依遮罩排序"""
        from posimod.subsets import masks_up_to

        assert list(masks_up_to(3, 1)) == [0, 1, 2, 4]
        assert len(list(masks_up_to(5, 5))) == 32

    def test_submasks(self):
        """測試子集合列舉"""
        from posimod.subsets import submasks

        assert list(submasks(0b101)) == [5, 4, 1, 0]
        assert list(submasks(0b101, proper=True)) == [4, 1, 0]
        assert list(submasks(0b101, proper=True, nonempty=True)) == [4, 1]

    def test_is_laminar(self):
        """測試層狀族判斷"""
        from posimod.subsets import is_laminar

        assert is_laminar([0b001, 0b011, 0b111, 0b100])
        assert not is_laminar([0b011, 0b110])
        assert is_laminar([])


class TestSettings:
    """設定測試"""

    def test_defaults(self):
        """測試預設值"""
        from posimod.settings import Settings

        settings = Settings()

        assert settings.exhaustive_cap == 12
        assert settings.brute_cap == 20
        assert settings.ground_cap == 24

    def test_env_override(self):
        """測試 POSIMOD_N_CAP 覆寫兩個上限"""
        from posimod.settings import load_settings

        settings = load_settings({"POSIMOD_N_CAP": "8"})
        assert settings.exhaustive_cap == 8
        assert settings.brute_cap == 8

        # 不能超過基礎集合上限
        assert load_settings({"POSIMOD_N_CAP": "100"}).exhaustive_cap == 24
        assert load_settings({}).exhaustive_cap == 12

    def test_bad_env_value(self):
        """測試不合法的環境變數"""
        from posimod.errors import ConfigError
        from posimod.settings import load_settings

        with pytest.raises(ConfigError):
            load_settings({"POSIMOD_N_CAP": "abc"})
        with pytest.raises(ConfigError):
            load_settings({"POSIMOD_N_CAP": "0"})

    def test_cap_applies_to_verifier(self, monkeypatch):
        """測試環境變數限制窮舉驗證"""
        from posimod.errors import CapExceededError
        from posimod.instances import make_cardinality
        from posimod.verify import verify_posimodular

        monkeypatch.setenv("POSIMOD_N_CAP", "4")
        with pytest.raises(CapExceededError):
            verify_posimodular(make_cardinality(5))
        assert verify_posimodular(make_cardinality(4)) is None
