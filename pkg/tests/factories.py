"""Model factories for testing."""

import factory

from app.levy_models import (
    DeterministicLaw,
    ErlangLaw,
    ExponentialLaw,
    HyperexponentialLaw,
    LevyModel,
    Orientation,
    ParetoLomaxLaw,
)
from app.transforms import InspectionScheme


class ExponentialLawFactory(factory.Factory):
    """Factory for exponential claims."""

    class Meta:
        model = ExponentialLaw

    rate = 1.0


class ErlangLawFactory(factory.Factory):
    class Meta:
        model = ErlangLaw

    shape = 2
    rate = 2.0


class HyperexponentialLawFactory(factory.Factory):
    class Meta:
        model = HyperexponentialLaw

    weights = (0.4, 0.6)
    rates = (0.5, 2.0)


class ParetoLomaxLawFactory(factory.Factory):
    class Meta:
        model = ParetoLomaxLaw

    shape = 2.0
    scale = 1.0


class DeterministicLawFactory(factory.Factory):
    class Meta:
        model = DeterministicLaw

    mass = 1.0


class LevyModelFactory(factory.Factory):
    """Factory for compound-Poisson models, spectrally positive by default."""

    class Meta:
        model = LevyModel

    orientation = Orientation.SPECTRALLY_POSITIVE
    premium_rate = 1.0
    arrival_rate = 0.5
    claims = factory.SubFactory(ExponentialLawFactory)


class InspectionSchemeFactory(factory.Factory):
    """Factory for Poisson inspection schemes."""

    class Meta:
        model = InspectionScheme

    kind = "poisson"
    beta = 1.0
    omega = 1.0
    k = 1
