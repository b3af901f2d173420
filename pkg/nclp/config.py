"""
config.py
Global numeric settings for the laboratory.
"""

# Spectral grouping: eigenvalues closer than this times ||x||_inf share a projection
SPECTRAL_GROUPING_RTOL = 1e-9

# Relative tolerance used when checking x = x*
HERMITIAN_RTOL = 1e-10

# Projection checks in conditional expectations (idempotent, orthogonal)
PROJECTION_ATOL = 1e-9

# Allowed drift of tau(d) from the declared mass of a density
DENSITY_MASS_RTOL = 1e-12

# Normalization check for inputs that must have unit norm
NORMALIZATION_RTOL = 1e-10

# Conjugate exponent check |1/p + 1/q - 1|
CONJUGATE_ATOL = 1e-12

# Largest block dimension we accept (dense linear algebra only)
MAX_BLOCK_DIM = 1024

# Boundary sampling of strip functions
DEFAULT_T_MAX = 20.0
DEFAULT_T_STEP = 1.0 / 64.0

# Kernel condition F(theta) ~ 0 relative to the boundary norm
KERNEL_RTOL = 1e-10

# Admissibility slack for closed-form extremals
EXTREMAL_BOUNDARY_SLACK = 1e-8
EXTREMAL_INTERIOR_ATOL = 1e-10

# Within-atom quadrature
QUAD_EPSABS = 1e-13
QUAD_EPSREL = 1e-12
QUAD_LIMIT = 200

# Report formatting
SIGNIFICANT_DIGITS = 17
