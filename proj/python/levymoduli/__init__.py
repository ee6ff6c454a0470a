"""L^p modulus toolkit: spectral increment variances, exact Gaussian path
simulation, Levy local-time estimation, moment oracles, and the Monte Carlo
verification harness."""

try:
    from levymoduli._levymoduli import *  # noqa: F401,F403
    from levymoduli._levymoduli import __doc__ as _core_doc  # noqa: F401
except ImportError:
    # Build-tree layout: the extension sits next to the package on sys.path.
    from _levymoduli import *  # noqa: F401,F403
