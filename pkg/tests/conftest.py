import pytest

from frobkern.groups import (
    affine_group,
    agl1_8,
    alternating_group,
    cyclic_group,
    dihedral_group,
    symmetric_group,
)
from frobkern.context import build_context
from frobkern.perm import Permutation, generate_group

# name -> (degree, group order) for the Frobenius corpus
FROBENIUS_ORDERS = {
    "s3": (3, 6),
    "d5": (5, 10),
    "a4": (4, 12),
    "agl1_5": (5, 20),
    "agl1_7": (7, 42),
    "f21": (7, 21),
    "agl1_8": (8, 56),
}

ACCEPTANCE_CORPUS = ("s3", "d5", "a4", "agl1_5", "agl1_7")


def corpus_group(name):
    return {
        "s3": lambda: symmetric_group(3),
        "d5": lambda: dihedral_group(5),
        "a4": lambda: alternating_group(4),
        "agl1_5": lambda: affine_group(5),
        "agl1_7": lambda: affine_group(7),
        "f21": lambda: affine_group(7, 2),
        "agl1_8": agl1_8,
        "s4": lambda: symmetric_group(4),
        "c5": lambda: cyclic_group(5),
        "intransitive": lambda: generate_group(
            [Permutation.from_cycles([(0, 1, 2)], 5), Permutation.from_cycles([(3, 4)], 5)], 5),
    }[name]()


def cyc(text, n):
    """``cyc("(0 1)(2 3)", 4)`` without going through the file parser."""
    cycles = [tuple(int(t) for t in c.split()) for c in text.strip("()").split(")(") if c.strip()]
    return Permutation.from_cycles(cycles, n)


@pytest.fixture(params=sorted(FROBENIUS_ORDERS))
def frob_name(request):
    return request.param


@pytest.fixture
def frob_group(frob_name):
    return corpus_group(frob_name)


@pytest.fixture
def frob_ctx(frob_group):
    return build_context(frob_group)


@pytest.fixture(scope="session")
def s3_ctx():
    return build_context(symmetric_group(3))


_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
