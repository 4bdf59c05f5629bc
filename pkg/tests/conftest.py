import sys

import pytest

from schemeprod import fixtures
from schemeprod.action import build_action, full_action, trivial_action
from schemeprod.category import LabellingSet, TauScheme, identity, make_cmorphism, star
from schemeprod.scheme import from_color_matrix
from schemeprod.semidirect import semidirect_product


def twisted_actions():
    """Actions of the two-point scheme on U4 that exercise non-identity data.

    ``alpha``: the second point carries U4 relabelled by inversion.
    ``moved``: the second point carries U4 on permuted points.
    ``half``: the two points are linked through the quotient by {0, 2}.
    """
    U4, two = fixtures.u4(), fixtures.two_point()
    tau = LabellingSet.of(U4)
    plain = TauScheme.plain(U4)
    ident = identity(U4)
    out = {}
    inverted = TauScheme(tau, U4, (0, 3, 2, 1))
    out["alpha"] = build_action(two, U4, [plain, inverted], [[ident, ident], [ident, ident]])
    perm = [0, 2, 1, 3]
    T1 = from_color_matrix([[U4.color[perm[x]][perm[y]] for y in range(4)] for x in range(4)])
    phi = make_cmorphism(U4, T1, {0}, {0}, perm)
    out["moved"] = build_action(two, U4, [plain, TauScheme(tau, T1, tuple(range(4)))],
                                {(0, 0): ident, (1, 1): identity(T1), (0, 1): phi, (1, 0): star(phi)})
    half = make_cmorphism(U4, U4, {0, 2}, {0, 2}, range(4))
    out["half"] = build_action(two, U4, [plain, plain], [[ident, half], [half, ident]])
    return out


def fixture_actions():
    """Every action the round-trip and product checks run over, by name."""
    T, U = fixtures.t3(), fixtures.u4()
    return {
        "example": fixtures.example_action(),
        "trivial_u4_t3": trivial_action(U, T),
        "full_u4_t3": full_action(U, T),
        "trivial_point_t3": trivial_action(fixtures.point(), T),
        "trivial_u4_point": trivial_action(U, fixtures.point()),
        "full_point_t3": full_action(fixtures.point(), T),
        "full_u4_point": full_action(U, fixtures.point()),
        "full_klein_t3": full_action(fixtures.klein(), T),
        "trivial_two_t3": trivial_action(fixtures.two_point(), T),
        **{f"twisted_{k}": v for k, v in twisted_actions().items()},
    }


ACTION_NAMES = sorted(fixture_actions())


@pytest.fixture(scope="session")
def actions():
    return fixture_actions()


@pytest.fixture(scope="session")
def s12_product():
    return semidirect_product(fixtures.example_action())


@pytest.fixture(scope="session")
def s12(s12_product):
    return s12_product.scheme


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.pytest_terminal_summary_lines():
        terminalreporter.write_line(line)
