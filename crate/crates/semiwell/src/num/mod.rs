//! Small in-house numerical kernels shared by the solver modules: adaptive
//! Gauss-Kronrod quadrature, a Dormand-Prince 5(4) stepper, a bracketed
//! secant/bisection root hybrid, least-squares line fits, and double-double
//! accumulation for cancellation-prone series.

pub mod dd;
pub mod fit;
pub mod ode;
pub mod quad;
pub mod roots;
