use std::path::Path;

use fanweave::basis::{Label, UnitaryBasis};
use fanweave::combinatorics::{
    group_cyclic, group_product, group_s3, FiniteGroup, HadamardFamily, LatinSquare, MAX_DETECTED_ROOT_ORDER,
};
use fanweave::Tolerances;
use serde::de::DeserializeOwned;

use crate::output::{CliResult, Failure};

pub fn tolerances(overrides: &[String]) -> CliResult<Tolerances> {
    let mut tol = Tolerances::default();
    for o in overrides {
        let (name, value) = o
            .split_once('=')
            .ok_or_else(|| Failure::invalid(format!("--tol expects NAME=VALUE, got {o:?}")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Failure::invalid(format!("--tol {name}: {value:?} is not a number")))?;
        tol.set(name.trim(), value)?;
    }
    Ok(tol)
}

/// Reads a JSON file holding either a bare value or an envelope written by
/// this tool, in which case the value sits under `result`.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?;
    let mut value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    if let Some(obj) = value.as_object_mut() {
        if obj.contains_key("command") && obj.contains_key("result") {
            value = obj.remove("result").unwrap();
        }
    }
    serde_json::from_value(value).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

pub fn basis(path: &Path) -> CliResult<UnitaryBasis> {
    read_json(path)
}

/// Accepts `(m,n)`, bare `m,n`, or a name such as `ZZ`.
pub fn label(s: &str) -> CliResult<Label> {
    let t = s.trim();
    let wrapped = if !t.starts_with('(') && t.contains(',') {
        format!("({t})")
    } else {
        t.to_string()
    };
    Ok(wrapped.parse()?)
}

/// The requested tag, or the first label of the basis.
pub fn tag_label(basis: &UnitaryBasis, tag: Option<&str>) -> CliResult<Label> {
    let l = match tag {
        Some(s) => label(s)?,
        None => basis.labels()[0].clone(),
    };
    basis.position(&l)?;
    Ok(l)
}

/// `s3`, `z<N>`, products joined by `x` (`z2xz2`), or a JSON file.
pub fn group(spec: &str) -> CliResult<FiniteGroup> {
    let path = Path::new(spec);
    if path.exists() {
        return read_json(path);
    }
    let mut factors = spec.split('x').map(|f| -> CliResult<FiniteGroup> {
        match f.trim().to_ascii_lowercase().as_str() {
            "s3" => Ok(group_s3()),
            z if z.starts_with('z') => {
                let n: usize = z[1..]
                    .parse()
                    .map_err(|_| Failure::invalid(format!("bad cyclic group {f:?}")))?;
                Ok(group_cyclic(n)?)
            }
            _ => Err(Failure::invalid(format!("unknown group {f:?}; expected s3, z<N>, a product like z2xz2, or a file"))),
        }
    });
    let first = factors.next().unwrap()?;
    factors.try_fold(first, |acc, g| Ok(group_product(&acc, &g?)))
}

pub fn latin(path: &Path) -> CliResult<LatinSquare> {
    read_json(path)
}

/// `fourier` or a family JSON file; file families get exact exponents
/// detected when their entries are roots of unity.
pub fn family(spec: &str, d: usize) -> CliResult<HadamardFamily> {
    let fam = if spec == "fourier" {
        HadamardFamily::fourier(d)
    } else {
        let f: HadamardFamily = read_json(Path::new(spec))?;
        if f.is_exact() {
            f
        } else {
            f.detect_roots(MAX_DETECTED_ROOT_ORDER)
        }
    };
    if fam.d() != d {
        return Err(Failure::invalid(format!("Hadamard family has size {} but the latin square has {d}", fam.d())));
    }
    Ok(fam)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_and_tolerances() {
        assert_eq!(label("2,2").unwrap(), Label::Pair(2, 2));
        assert_eq!(label("(3,0)").unwrap(), Label::Pair(3, 0));
        assert_eq!(label("ZZ").unwrap(), Label::Name("ZZ".into()));
        let t = tolerances(&["psd=1e-8".into()]).unwrap();
        assert_eq!(t.psd, 1e-8);
        assert!(tolerances(&["gram=1".into()]).is_err());
        assert!(tolerances(&["psd".into()]).is_err());
    }

    #[test]
    fn group_specs() {
        assert_eq!(group("s3").unwrap().order(), 6);
        assert_eq!(group("z2xz3").unwrap().order(), 6);
        assert!(group("z2xz2").unwrap().is_abelian());
        assert!(group("q8").is_err());
    }
}
