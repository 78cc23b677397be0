"""Quantum-circuit model of a uniformly accelerated, partially transparent mirror.

Per-frequency Bogoliubov circuits (two-mode squeezer, beamsplitter,
antisqueezer), vacuum statistics of the output Unruh modes, and
inertial-detector wavepacket observables.  Units: proper acceleration a = 1.
"""

from .circuit import (MirrorModel, ModeTransform, closed_form_transform, compose,
                      mirror_matrix, reflectivity, squeezer_matrix)
from .detector import (DetectorReport, approx_particle_number, detector_report, energy,
                       flux_particle_number, min_variance, pair_moment_aa, variance)
from .errors import (ConfigError, DivergenceError, DomainError, MirrorError,
                     QuadratureError)
from .modes import (ThermalFactors, Wavepacket, gamma_abs2, minkowski_unruh_abs2,
                    narrowband_overlap, squeeze_param, thermal_factors)
from .numerics import QuadratureSpec, integrate_semi_infinite, spectral_weights
from .statistics import (MomentTable, moment_table, number_spectrum, vacuum_number,
                         vacuum_pair_moment)

__version__ = "0.1.0"
