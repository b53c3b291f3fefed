//! Non-abelian tensor powers and universal central extensions.
//!
//! `L^{(x) n}` carries the bracket `[T_1, .., T_n] = ad_{[T_2],..,[T_n]}(T_1)`
//! acting on every factor of `T_1`. Its quotient by the image of the second
//! boundary map `delta_2` is `L^{*n}`, whose bracket map onto a perfect `L`
//! is the universal central extension with kernel `nHL_1(L)`.

mod extension;
mod phi;
mod star;
mod tensor;

pub use extension::{
    check_universality, section, u_on_uce, u_on_uce_budget, uce, uce_budget, witness_extensions, CentralExtension, Uce,
};
pub use phi::{center_kernel_check, center_kernel_check_budget, phi_map, phi_map_budget, CenterKernelCheck, PhiMap, SlotCheck};
pub use star::{star_power, star_power_budget, StarPower};
pub use tensor::{
    delta2, delta2_budget, derivation_on_tensor, kron_sparse, tensor_bracket, tensor_bracket_algebra,
    tensor_bracket_algebra_budget,
};
