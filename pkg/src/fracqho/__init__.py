"""Space-fractional quantum harmonic oscillator: factorization states and information measures."""
from .genpoly import (DomainError, GeneralizedPolynomial, MomentumState, SingularPointError,
                      differentiate, evaluate, hermite_tilde, min_exponent, momentum_state,
                      rodrigues_oracle)
from .measures import (DivergentMeasure, InfoMeasures, SampledDensity, compose_measures,
                       disequilibrium, fisher, momentum_density, normalize, position_density,
                       shannon, variance)
from .quad import (NonConvergent, NonIntegrable, QuadratureResult, SingularityHint, integrate,
                   integrate_semiinfinite)
from .refsolver import EigenResult, diagonalize, eigen_residual
from .spectrum import SpectrumTable, Units, action_integral, beta, energy_level, log_gamma
from .transform import (GridSpec, NonNormalizableState, PositionState, inverse_fourier,
                        parseval_ratio, spectral_derivative)

__version__ = "0.1.0"
