"""fermigraph: compile fermionic Hamiltonians into qubit Pauli operators
over a user-chosen system graph, with quasi-local routed couplings,
cycle stabilizers, and resource analytics."""

from .pauli import (
    PauliString,
    PauliSum,
    pauli_commutes,
    pauli_is_hermitian,
    pauli_multiply,
    pauli_weight,
    sum_accumulate,
)
from .graph import (
    CycleBasis,
    InteractionGraph,
    SystemGraph,
    Vertex,
    cycle_basis,
    half_degree_total,
    qubit_count,
    shortest_path,
)
from .geometries import (
    gen_blocked_square,
    gen_heavy_hex,
    gen_lattice,
    gen_square_with_diagonals,
    gen_syk_geometry,
    heavy_hex_device,
)
from .localbasis import (
    MajoranaBasis,
    basis_fenwick,
    basis_jw,
    basis_jw_yx,
    basis_ternary_tree,
    basis_verify,
    get_basis,
)
from .encoding import Encoding, build_encoding, verify_encoding_algebra
from .fermion import (
    EVTerm,
    FermionOperator,
    MajoranaMonomial,
    build_lattice_model,
    build_syk2,
    interaction_graph_from_hamiltonian,
    monomial_to_ev,
    pair_to_ev,
    syk2_couplings,
    syk2_monomials,
    to_majorana_normal_form,
)
from .transform import transform_hamiltonian, transform_monomials
from .analytics import (
    BenchRecord,
    WeightStats,
    loglog_slope,
    records_to_csv,
    sweep_syk_geometries,
    weight_stats,
)
from .dense import dense_oracle_check

__version__ = "0.1.0"

__all__ = [
    "PauliString", "PauliSum", "pauli_multiply", "pauli_commutes",
    "pauli_weight", "pauli_is_hermitian", "sum_accumulate",
    "SystemGraph", "Vertex", "InteractionGraph", "CycleBasis",
    "cycle_basis", "shortest_path", "qubit_count", "half_degree_total",
    "gen_lattice", "gen_square_with_diagonals", "gen_syk_geometry",
    "gen_blocked_square", "gen_heavy_hex", "heavy_hex_device",
    "MajoranaBasis", "basis_jw", "basis_jw_yx", "basis_fenwick",
    "basis_ternary_tree", "basis_verify", "get_basis",
    "Encoding", "build_encoding", "verify_encoding_algebra",
    "FermionOperator", "MajoranaMonomial", "EVTerm",
    "to_majorana_normal_form", "pair_to_ev", "monomial_to_ev",
    "interaction_graph_from_hamiltonian", "build_syk2", "syk2_couplings",
    "syk2_monomials", "build_lattice_model",
    "transform_hamiltonian", "transform_monomials",
    "WeightStats", "BenchRecord", "weight_stats", "sweep_syk_geometries",
    "loglog_slope", "records_to_csv", "dense_oracle_check",
]
