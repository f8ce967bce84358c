from .entities import Label, PricingResult
from .exceptions import EnumerationLimitError, MissingDualError, PricingDeadlineError, PricingError
from .service import (
    IPricer,
    KnapsackPricer,
    LabelingPricer,
    price_cvrp,
    price_cvrp_bruteforce,
    price_sscflp,
    price_sscflp_bruteforce,
    reduced_cost,
)
