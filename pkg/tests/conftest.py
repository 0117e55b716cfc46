import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

import oracles  # noqa: E402
from wfesets.digraph import Digraph, encode_numeral  # noqa: E402
from wfesets.hfset import from_ack  # noqa: E402

settings.register_profile(
    "default", deadline=None, max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# members of V_5 are exactly the sets with Ackermann index below 2^16
hfsets = st.integers(min_value=0, max_value=2**16 - 1).map(from_ack)
small_hfsets = st.integers(min_value=0, max_value=2**4 - 1).map(from_ack)


@st.composite
def wfev_digraphs(draw, max_nodes: int = 10):
    rng = draw(st.randoms(use_true_random=False))
    return oracles.random_wfev(rng, max_nodes)


@st.composite
def raw_digraphs(draw, max_node: int = 6, max_edges: int = 10):
    edges = draw(st.lists(st.tuples(st.integers(0, max_node), st.integers(0, max_node)),
                          max_size=max_edges))
    return Digraph(edges)


def hat(n: int) -> Digraph:
    return encode_numeral(n)
