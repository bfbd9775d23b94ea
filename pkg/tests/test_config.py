import argparse
from fractions import Fraction

import pytest

from lib import config
from lib.config import parse_code_arg, parse_hex_arg, parse_lengths_arg, parse_positive_int


def test_parse_lengths():
    assert parse_lengths_arg("1, 1/2,-3,0.25") == (1, Fraction(1, 2), -3, Fraction(1, 4))
    for bad in ["1,,2", "a", "1/0"]:
        with pytest.raises(argparse.ArgumentTypeError):
            parse_lengths_arg(bad)


def test_parse_code():
    assert parse_code_arg(" 6,3;6,2,1 ") == "6,3;6,2,1"
    assert parse_code_arg("-") == "-"
    for bad in ["6,0", "6;;3", "x"]:
        with pytest.raises(argparse.ArgumentTypeError):
            parse_code_arg(bad)


def test_parse_hex_and_int():
    assert parse_hex_arg("0xE8") == "e8"
    with pytest.raises(argparse.ArgumentTypeError):
        parse_hex_arg("g1")
    assert parse_positive_int("9") == 9
    for bad in ["0", "-1", "two"]:
        with pytest.raises(argparse.ArgumentTypeError):
            parse_positive_int(bad)


def test_validate_config(monkeypatch, capsys):
    monkeypatch.setattr(config, "CENSUS_PARALLEL", "")
    monkeypatch.setattr(config, "CENSUS_PROGRESS", "1")
    monkeypatch.setattr(config, "OEIS_TIMEOUT", "15")
    monkeypatch.setattr(config, "OEIS_BASE_URL", "https://oeis.org")
    assert config.validate_config()

    monkeypatch.setattr(config, "CENSUS_PARALLEL", "zero")
    monkeypatch.setattr(config, "OEIS_TIMEOUT", "soon")
    assert not config.validate_config()
    err = capsys.readouterr().err
    assert "[ERROR] CENSUS_PARALLEL" in err
    assert "[ERROR] OEIS_TIMEOUT" in err


def test_defaults(monkeypatch):
    monkeypatch.setattr(config, "CENSUS_PARALLEL", "3")
    assert config.default_parallel() == 3
    monkeypatch.setattr(config, "CENSUS_PARALLEL", "")
    assert config.default_parallel() >= 1
    monkeypatch.setattr(config, "CENSUS_PROGRESS", "0")
    assert not config.progress_enabled()
