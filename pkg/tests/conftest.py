"""Shared fields and hypothesis strategies for the suite."""

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from matgrowth import standard_field
from matgrowth.groups import GroupSet

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("suite")

F5 = standard_field(5)
F7 = standard_field(7)
F9 = standard_field(9)
F16 = standard_field(16)
F25 = standard_field(25)
F101 = standard_field(101)

# small enough that brute-force recounts stay instant
SMALL_FIELDS = (F5, F7, F9)


def t2_wires(spec):
    q = spec.q
    return st.tuples(
        st.integers(1, q - 1), st.integers(0, q - 1), st.integers(1, q - 1)
    )


def heis_wires(spec):
    q = spec.q
    coord = st.integers(0, q - 1)
    return st.tuples(coord, coord, coord)


def group_wires(spec, group):
    return t2_wires(spec) if group == "T2" else heis_wires(spec)


def group_sets(spec, group, min_size=1, max_size=10):
    return st.lists(
        group_wires(spec, group), min_size=min_size, max_size=max_size, unique=True
    ).map(lambda ws: GroupSet(group, spec, ws))


def small_sets(min_size=1, max_size=10):
    """A set from either group over one of the small fields."""
    return st.one_of(
        *[
            group_sets(spec, group, min_size, max_size)
            for spec in SMALL_FIELDS
            for group in ("T2", "H")
        ]
    )
