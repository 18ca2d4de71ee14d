//! Named example algebras: `trivial`, `cyclic:n`, `sym:3`, `dihedral:n`,
//! `taft:n` and `dual:<preset>`.

use hopfrob::builders::{cyclic, dihedral, sym3, taft, trivial};
use hopfrob::hopfcore::{dual_hopf, standard_cap, standard_cup, HopfData};

use crate::spec::SpecError;

fn bad(name: &str, why: &str) -> SpecError {
    SpecError::Invalid { path: format!("preset:{name}"), message: why.into() }
}

fn number(name: &str, arg: Option<&str>, min: usize) -> Result<usize, SpecError> {
    let n: usize = arg
        .ok_or_else(|| bad(name, "missing size"))?
        .parse()
        .map_err(|_| bad(name, "size is not a number"))?;
    if n < min {
        return Err(bad(name, &format!("size must be at least {min}")));
    }
    Ok(n)
}

pub fn preset(name: &str) -> Result<HopfData, SpecError> {
    if let Some(inner) = name.strip_prefix("dual:") {
        let h = preset(inner)?;
        return Ok(dual_hopf(&h, &standard_cap(h.dim), &standard_cup(h.dim)).expect("coordinate duality"));
    }
    let (kind, arg) = match name.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (name, None),
    };
    match kind {
        "trivial" if arg.is_none() => Ok(trivial()),
        "cyclic" => Ok(cyclic(number(name, arg, 1)?)),
        "sym" if arg == Some("3") => Ok(sym3()),
        "sym" => Err(bad(name, "only sym:3 is available")),
        "dihedral" => Ok(dihedral(number(name, arg, 2)?)),
        "taft" => Ok(taft(number(name, arg, 2)?)),
        _ => Err(bad(name, "unknown preset")),
    }
}
