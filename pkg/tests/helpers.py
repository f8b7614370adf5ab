from ahlab.configurations import FatPoint, FatPointConfig, coordinate_hyperplane, random_general, random_on_hyperplane, union
from ahlab.fields import DEFAULT_FIELD


def mixed_multiplicities(n, mults, seed, field=DEFAULT_FIELD):
    """Random general support with the given multiplicities, one per point."""
    base = random_general(n, len(mults), 1, seed, field)
    return base.with_points(FatPoint(pt.coords, m) for pt, m in zip(base.points, mults))


def decomposable(n, on_l, off_l, seed, on_mult=2, off_mult=2, field=DEFAULT_FIELD):
    """Points on x_n = 0 plus random points off it; returns (config, hyperplane)."""
    hyperplane = coordinate_hyperplane(n)
    parts = []
    if on_l:
        parts.append(random_on_hyperplane(n, on_l, on_mult, hyperplane, seed, field))
    if off_l:
        parts.append(random_general(n, off_l, off_mult, seed + 1, field))
    if not parts:
        return FatPointConfig(n, (), field), hyperplane
    return union(*parts), hyperplane
