from sparsehard.clauses import AntiHornClause, words_upto
from sparsehard.world import Poly, SparseWorld


def C(text, k=None):
    return AntiHornClause.parse(text, k)


def table_world(S, table, *, k=1, n_max=2, p=Poly.of(2), q=Poly.of(4), seed=0):
    """World whose reduction is given explicitly; unlisted inputs map to the empty formula."""
    overrides = {x: frozenset() for x in words_upto(n_max)}
    overrides.update({x: frozenset(C(t) for t in clauses) for x, clauses in table.items()})
    return SparseWorld(seed=seed, k=k, n_max=n_max, p=p, q=q, S=frozenset(S), overrides=overrides)


ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
