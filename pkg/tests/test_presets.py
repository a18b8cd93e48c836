import pytest

from matlis.field import GF, QQ
from matlis.presets import PRESETS, run_preset


@pytest.mark.parametrize("name", PRESETS[:-1])
@pytest.mark.parametrize("field", [QQ, GF(32003)], ids=["QQ", "F32003"])
def test_named_presets_pass(name, field):
    rows = run_preset(name, field)
    assert rows and all(r["pass"] for r in rows), [r for r in rows if not r["pass"]]


def test_example_6_5_tensor_is_k():
    rows = run_preset("example-6-5")
    assert rows[-1]["observed"] == 1


@pytest.mark.parametrize("abc,length", [((1, 1, 2), 1), ((2, 1, 3), 4), ((3, 2, 5), 9),
                                        ((2, 3, 4), 2)])
def test_general_family(abc, length):
    rows = run_preset("example-6-5-general(%d,%d,%d)" % abc)
    assert all(r["pass"] for r in rows)
    assert rows[0]["observed"] == length


@pytest.mark.parametrize("name", ["example-6-5-general(0,1,2)", "example-6-5-general(1,2,2)",
                                  "example-6-5-general(1,2)", "example-7", ""])
def test_bad_presets(name):
    with pytest.raises(ValueError):
        run_preset(name)
