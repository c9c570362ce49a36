"""starkbloch: wave-packet dynamics in a generalized Wannier-Stark model.

The Hamiltonian H = epsilon p^2 + T(p) + F x combines a free-particle
kinetic term, a periodic band dispersion T of period 2 pi / d, and a
constant force.  The library provides its analytic eigenfunctions (ladders
of shifted Airy functions), the exact propagator kernel, and three
independent wave-packet evolution engines, reproducing four dynamical
regimes: parabolic motion, pseudo-Bloch oscillations, accelerated Bloch
oscillations, and Airy-Bloch oscillations.
"""

from .core import (BandDispersion, PhysicalParams, SpatialGrid, WaveFunction,
                   band_antiderivative, band_eval, boundary_leak, dft,
                   inner_product, make_grid, norm, normalize)
from .eigen import (AiryCoeffTable, CombCoeffTable, EigenState,
                    airy_coefficients, coeff_autocorrelation,
                    comb_coefficients, eigenfunction_eval, spectrum_function)
from .evolve import (EvolutionSpec, evolve, evolve_characteristics,
                     evolve_kernel_quadrature, evolve_replica,
                     evolve_shift_map, evolve_splitstep, evolve_stark_exact,
                     splitstep_converged)
from .initial_states import InitialStateSpec, build_initial
from .observables import (TrajectoryRecord, centroid, momentum_centroid,
                          parabolic_reference, revival_probability,
                          trajectory_from_series, width)
from .propagator import (ShiftMap, WeightSequence, airy_pair_integral,
                         kernel_weights, propagator_kernel, replica_weights,
                         shift_map, stark_kernel)
from .scenarios import FIGURE_PRESETS, ScenarioConfig, preset_config, run_scenario
from .specfun import airy_ai, bessel_j, bessel_j_sequence

__version__ = "0.1.0"
