//! Named example instances shared by the test suites and the CLI's
//! `--builtin` flag. Constructors are cheap and return fresh values.

use crate::algebroid::{HomAlgebroid, Section, Variant};
use crate::homlie::{adjoint_rep, HomLieAlgebra, Representation};
use crate::kernel::base::BaseGeometry;
use crate::kernel::linalg::QMatrix;
use crate::kernel::poly::{Poly, Vars};
use crate::kernel::rational::rat_int;
use std::sync::Arc;

/// [e1,e2] = e2 with twist diag(1,2).
pub fn aff2() -> HomLieAlgebra {
    let mut c = vec![vec![vec![rat_int(0); 2]; 2]; 2];
    c[0][1][1] = rat_int(1);
    c[1][0][1] = rat_int(-1);
    let alpha = QMatrix::from_rows(vec![
        vec![rat_int(1), rat_int(0)],
        vec![rat_int(0), rat_int(2)],
    ])
    .expect("square rows");
    HomLieAlgebra::new(c, alpha).expect("valid shape")
}

/// [e1,e2] = e3 with twist id: the Heisenberg algebra read with a trivial
/// twist.
pub fn heisenberg() -> HomLieAlgebra {
    let mut c = vec![vec![vec![rat_int(0); 3]; 3]; 3];
    c[0][1][2] = rat_int(1);
    c[1][0][2] = rat_int(-1);
    HomLieAlgebra::new(c, QMatrix::identity(3)).expect("valid shape")
}

pub fn aff2_adjoint() -> Representation {
    adjoint_rep(Arc::new(aff2())).expect("invertible twist")
}

pub fn heisenberg_adjoint() -> Representation {
    adjoint_rep(Arc::new(heisenberg())).expect("invertible twist")
}

/// Rank-1 algebroid over Q[x] with the sign flip φ: x ↦ −x, anchor
/// ρ(e) = φ*∘(d/dx), and α(e) = −e, in shape A. The smallest example whose
/// twist is genuinely non-trivial.
pub fn twisted_line() -> HomAlgebroid {
    let vars = Vars::new(["x"]);
    let minus_x = Poly::variable(&vars, 0).neg();
    let base = Arc::new(BaseGeometry::new(vars.clone(), vec![minus_x]).expect("one image"));
    HomAlgebroid::new(
        base.clone(),
        1,
        vec![vec![Section::zero(base.clone(), 1)]],
        vec![vec![Poly::one(&vars)]],
        vec![vec![Poly::int(&vars, -1)]],
        Variant::A,
    )
    .expect("valid shape")
}

/// Tangent bundle of the line with every twist trivial; degenerates to the
/// classical picture.
pub fn tangent_line() -> HomAlgebroid {
    let vars = Vars::new(["x"]);
    let base = Arc::new(BaseGeometry::identity(vars.clone()));
    HomAlgebroid::new(
        base.clone(),
        1,
        vec![vec![Section::zero(base.clone(), 1)]],
        vec![vec![Poly::one(&vars)]],
        vec![vec![Poly::one(&vars)]],
        Variant::A,
    )
    .expect("valid shape")
}

/// Tangent bundle of the plane: rank 2 over Q[x,y], anchor e_i ↦ ∂/∂x_i,
/// all twists trivial.
pub fn tangent_plane() -> HomAlgebroid {
    let vars = Vars::new(["x", "y"]);
    let base = Arc::new(BaseGeometry::identity(vars.clone()));
    let zero = || Section::zero(base.clone(), 2);
    let o = || Poly::one(&vars);
    let z = || Poly::zero(&vars);
    HomAlgebroid::new(
        base.clone(),
        2,
        vec![vec![zero(), zero()], vec![zero(), zero()]],
        vec![vec![o(), z()], vec![z(), o()]],
        vec![vec![o(), z()], vec![z(), o()]],
        Variant::A,
    )
    .expect("valid shape")
}

pub const ALGEBROID_BUILTINS: [&str; 3] = ["twisted-line", "tangent-line", "tangent-plane"];
pub const HOMLIE_BUILTINS: [&str; 2] = ["heisenberg", "aff2"];

pub fn builtin_algebroid(name: &str) -> Option<HomAlgebroid> {
    match name {
        "twisted-line" => Some(twisted_line()),
        "tangent-line" => Some(tangent_line()),
        "tangent-plane" => Some(tangent_plane()),
        _ => None,
    }
}

/// Built-in algebra together with its adjoint representation.
pub fn builtin_homlie(name: &str) -> Option<(HomLieAlgebra, Representation)> {
    match name {
        "heisenberg" => Some((heisenberg(), heisenberg_adjoint())),
        "aff2" => Some((aff2(), aff2_adjoint())),
        _ => None,
    }
}
