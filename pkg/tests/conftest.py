import pytest

from convchar import parse_newick

# Seven-taxon worked example: caterpillar with pendant triples {a,b,c} and
# {e,f,g} around the lone leaf d.  Known values: 233 convex characters, 8
# with blocks >= 2, 3 with blocks >= 3, 1 with blocks >= 4.
EXAMPLE7_NEWICK = "(((a,b),c),((f,g),e),d);"


@pytest.fixture(scope="session")
def example7():
    return parse_newick(EXAMPLE7_NEWICK)
