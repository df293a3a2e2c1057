"""Exception types mapped onto CLI exit codes (2 config, 3 numerical)."""


class ConfigurationError(ValueError):
    """Invalid or inconsistent configuration: bad grids, misaligned centers,
    unknown config keys, out-of-range parameters."""


class NumericalError(ArithmeticError):
    """Numerical failure at run time: SVD non-convergence, pole-proximate
    kernel evaluation, realness-residue violations, failed ensemble members."""
