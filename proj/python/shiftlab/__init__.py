"""Numerical laboratory for univariate finitely generated shift-invariant spaces.

The compiled extension ``shiftlab._core`` carries the full API; this package
re-exports it flat.  Highlights:

- ``LaurentPolynomial``, ``eval_z``, ``eval_trig``: symbol algebra.
- ``Mask``, ``MaskSchedule``, ``basic_limit``, ``limit_samples``: subdivision.
- ``phi_hat_derivs``, ``decay_sequence``, ``try_classify``, ``omega``,
  ``h_lambda_basis``: Fourier-side analysis.
- ``check_zero_conditions``, ``construct_schedule``, ``verify_generation``,
  ``analytic_limit_audit``: mask-schedule construction and validation.
- ``block_shift_operator``, ``is_invariant``, ``minimal_invariant_subspace``:
  shift-operator invariant subspaces.
"""

from shiftlab._core import *  # noqa: F401,F403
from shiftlab._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
