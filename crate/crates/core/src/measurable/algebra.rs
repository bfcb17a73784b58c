//! Measurability for finite algebras.
//!
//! Every ultrafilter of a finite algebra is principal at an atom, and the
//! limit of `f` along it exists exactly when `f` is constant on that atom.

use crate::ext::ExtRat;
use crate::func::PointFn;
use crate::ground::Subset;
use crate::paving::Paving;

use super::{check_ground, is_measurable_signed, MeasurableError};

/// `f` (possibly signed) is constant on every atom of the algebra `a`.
pub fn is_measurable_algebra(f: &PointFn, a: &Paving) -> Result<bool, MeasurableError> {
    check_ground(f, a)?;
    let atoms = a.atoms()?;
    let constant = atoms.blocks().iter().all(|b| {
        let mut vals = b.elements().map(|x| f.value(x));
        let first = vals.next().expect("atoms are nonempty");
        vals.all(|v| v == first)
    });
    debug_assert_eq!(Ok(constant), is_measurable_signed(f, a));
    Ok(constant)
}

/// One of: `f(x) ≤ a + f(y)` for all `x, y` in the cell; `f ≥ 1/a` on the
/// cell; `f ≤ −1/a` on the cell.
pub fn t3_cell_ok(f: &PointFn, cell: Subset, a: &ExtRat) -> bool {
    let vals: Vec<&ExtRat> = cell.elements().map(|x| f.value(x)).collect();
    let Some(inv) = a.as_finite().map(|r| ExtRat::Fin(r.recip())) else {
        return true;
    };
    let close = vals.iter().all(|x| vals.iter().all(|y| **x <= a + *y));
    close || vals.iter().all(|v| **v >= inv) || vals.iter().all(|v| **v <= -inv.clone())
}

/// A partition of `X` into members of `a` whose cells each satisfy
/// [`t3_cell_ok`]. The atoms always qualify, since `f` is constant on each.
pub fn t3_partition(f: &PointFn, a: &Paving, param: &ExtRat) -> Result<Vec<Subset>, MeasurableError> {
    if !param.is_positive() {
        return Err(MeasurableError::BadParameter(param.clone()));
    }
    if !is_measurable_algebra(f, a)? {
        let atoms = a.atoms()?;
        let bad = atoms
            .blocks()
            .iter()
            .find(|b| b.elements().any(|x| f.value(x) != f.value(b.elements().next().expect("nonempty"))))
            .copied()
            .expect("some atom is not constant");
        return Err(MeasurableError::NotConstantOnAtom(bad));
    }
    Ok(a.atoms()?.blocks().to_vec())
}
