from enum import Enum
from fractions import Fraction
from pathlib import Path

from padic_euler import util
from padic_euler.padic import from_rational
from padic_euler.report import IdentityReport
from padic_euler.util import dump_json, format_rational, log_error


class Color(Enum):
    red = 1


def test_format_rational():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 6)) == "-1/2"


def test_dump_json():
    data = {"b": Fraction(1, 3), "a": [Color.red, Path("x/y")], "c": from_rational(2, 5, 2)}
    text = dump_json(data)
    assert text == '{"a":["red","x/y"],"b":"1/3","c":{"digits":[2,0],"p":5,"prec":2,"val":0}}'
    assert dump_json(IdentityReport("padic.x", {}, 1, 1)).startswith('{"agreement":1')


def test_log_error():
    assert log_error(ValueError("bad input")) == "Error: bad input"
    assert log_error(ValueError("Error: prefixed")) == "Error: prefixed"
    assert log_error(AssertionError("x")) == "Error: Internal assertion failed [x]"


def test_user_data_dir():
    assert util.user_data_dir.exists() and util.user_data_dir.name == ".appdata"
