from pathlib import Path

from qsnake.loopring import from_text, to_text
from qsnake.qchar import fundamental_qchar, snake_qchar

GOLDEN = Path(__file__).parent / "golden"


def check(name, char):
    want = (GOLDEN / name).read_text()
    assert to_text(char) == want
    assert from_text(want) == char


def test_fundamental_golden():
    check("fund_n2_node1_s0.txt", fundamental_qchar(2, 1, 0).char)
    check("fund_n2_node2_s0.txt", fundamental_qchar(2, 2, 0).char)


def test_snake_golden():
    check("snake_n2_even_l2_s0.txt", snake_qchar(2, "even", 2, 0).char)
