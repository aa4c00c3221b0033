from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def rationals(bound: int = 50, max_den: int = 12):
    return st.builds(
        Fraction,
        st.integers(-bound, bound),
        st.integers(1, max_den),
    )


def nonzero_rationals(bound: int = 50, max_den: int = 12):
    return rationals(bound, max_den).filter(bool)
