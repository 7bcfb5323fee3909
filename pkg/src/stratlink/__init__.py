"""Combinatorial models of homotopy links of stratified simplicial and cell complexes."""
from .cells import DeltaComplex, corpus, delta_sd, flatten, to_strat_complex, validate
from .complex import (
    StratComplex,
    Subcomplex,
    barycentric_subdivision,
    flag_of,
    from_maximal,
    glue,
    max_label,
    restrict_le,
)
from .flags import Flag, RegularFlag, degenerates_from, make_flag, make_regular, restrict, underlying_regular
from .homology import BettiTable, chain_complex, euler_characteristic, homology, induced_map_rational, mayer_vietoris_check
from .neighborhoods import (
    HolinkModel,
    holink_model,
    regular_complement_diagram,
    sim_stan_hood,
    simplicial_link,
    stan_hood_flag,
    stratum_ge_model,
)
from .poset import Poset, build_poset, chain_poset, leq, regular_flags

__version__ = "0.1.0"
