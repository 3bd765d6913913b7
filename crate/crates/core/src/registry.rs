//! Shared algebra instances and the text descriptors that name them.
//!
//! Descriptor grammar:
//! `desc := meet ('//' meet)?`, `meet := atom ('&' atom)*`, with atoms
//! `A:n`, `E:n`, `J:t`, `Bi:i`, `Bprime:n,i`, `D:n,i`, `X:n,i`, `Y:n,i`,
//! `O:n,i`, `P:t` (exterior on `P^0_t`), `k` and `profile:h1,h2,...`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{AlgebraKey, HopfAlgebra};
use crate::error::{Error, Result};
use crate::profile::{self, Profile};

fn registry() -> &'static Mutex<HashMap<AlgebraKey, Arc<HopfAlgebra>>> {
    static REGISTRY: OnceLock<Mutex<HashMap<AlgebraKey, Arc<HopfAlgebra>>>> = OnceLock::new();
    REGISTRY.get_or_init(Default::default)
}

fn intern(key: AlgebraKey, build: impl FnOnce() -> Result<HopfAlgebra>) -> Result<Arc<HopfAlgebra>> {
    if let Some(a) = registry().lock().expect("registry lock").get(&key) {
        return Ok(a.clone());
    }
    let built = Arc::new(build()?);
    let mut map = registry().lock().expect("registry lock");
    Ok(map.entry(key).or_insert(built).clone())
}

/// The algebra with profile `p`.
pub fn algebra(p: &Profile) -> Result<Arc<HopfAlgebra>> {
    intern(AlgebraKey::Profile(p.clone()), || HopfAlgebra::from_profile(p))
}

/// `h//z`.
pub fn quotient(h: &Arc<HopfAlgebra>, z: &Arc<HopfAlgebra>) -> Result<Arc<HopfAlgebra>> {
    let key = match (h.profile(), z.profile()) {
        (Some(a), Some(b)) => AlgebraKey::Quotient(a.clone(), b.clone()),
        _ => {
            return Err(Error::Structure(
                "quotients are only formed between profile algebras".into(),
            ))
        }
    };
    intern(key, || HopfAlgebra::quotient(h, z))
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn params(text: &str, offset: usize, count: usize) -> Result<Vec<u32>> {
    let values: Vec<u32> = text
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| syntax(offset, format!("expected {count} integer parameter(s), found {text:?}")))?;
    if values.len() != count {
        return Err(syntax(
            offset,
            format!("expected {count} parameter(s), found {}", values.len()),
        ));
    }
    Ok(values)
}

fn atom(text: &str, offset: usize) -> Result<Profile> {
    let text = text.trim();
    if text == "k" {
        return Ok(Profile::zero());
    }
    let (kind, rest) = text
        .split_once(':')
        .ok_or_else(|| syntax(offset, format!("expected 'kind:params', found {text:?}")))?;
    let arg_offset = offset + kind.len() + 1;
    match kind.trim() {
        "A" => Ok(profile::a(params(rest, arg_offset, 1)?[0])),
        "E" => Ok(profile::e(params(rest, arg_offset, 1)?[0])),
        "J" => profile::j(params(rest, arg_offset, 1)?[0]),
        "P" => profile::single(params(rest, arg_offset, 1)?[0]),
        "Bi" => profile::b(params(rest, arg_offset, 1)?[0]),
        "Bprime" | "D" | "X" | "Y" | "O" => {
            let v = params(rest, arg_offset, 2)?;
            let (n, i) = (v[0], v[1]);
            match kind.trim() {
                "Bprime" => profile::b_prime(n, i),
                "D" => profile::d(n, i),
                "X" => profile::x(n, i),
                "Y" => profile::y(n, i),
                _ => profile::o(n, i),
            }
        }
        "profile" => {
            let p: Profile = rest.parse().map_err(|e| match e {
                Error::Syntax { position, message } => syntax(arg_offset + position, message),
                other => other,
            })?;
            p.check()?;
            Ok(p)
        }
        other => Err(syntax(offset, format!("unknown algebra kind {other:?}"))),
    }
}

/// Profile named by `atom ('&' atom)*`.
pub fn parse_profile(text: &str) -> Result<Profile> {
    parse_meet(text, 0)
}

fn parse_meet(text: &str, offset: usize) -> Result<Profile> {
    let mut acc: Option<Profile> = None;
    let mut pos = offset;
    for part in text.split('&') {
        let p = atom(part, pos)?;
        acc = Some(match acc {
            None => p,
            Some(q) => q.meet(&p),
        });
        pos += part.len() + 1;
    }
    acc.ok_or_else(|| syntax(offset, "empty descriptor"))
}

/// Algebra named by a descriptor.
pub fn parse_algebra(text: &str) -> Result<Arc<HopfAlgebra>> {
    match text.split_once("//") {
        None => algebra(&parse_meet(text, 0)?),
        Some((h, z)) => {
            if z.contains("//") {
                return Err(syntax(h.len() + 2, "only one '//' is allowed"));
            }
            let ha = algebra(&parse_meet(h, 0)?)?;
            let za = algebra(&parse_meet(z, h.len() + 2)?)?;
            quotient(&ha, &za)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors() {
        assert_eq!(parse_algebra("A:2").unwrap().dim(), 64);
        assert_eq!(parse_algebra("Bprime:3,2").unwrap().profile(), Some(&Profile::finite(vec![1, 3, 2, 1])));
        assert_eq!(parse_profile("Bi:2&A:2").unwrap(), Profile::finite(vec![0, 2, 1]));
        assert_eq!(parse_algebra("profile:3,2,1").unwrap().name(), "A:2");
        assert_eq!(parse_algebra("A:1//E:1").unwrap().dim(), 2);
        assert_eq!(parse_algebra("k").unwrap().dim(), 1);
        assert!(parse_algebra("A:x").is_err());
        assert!(parse_algebra("Q:1").is_err());
        assert!(matches!(parse_algebra("Bi:1"), Err(Error::InfiniteAlgebra(_))));
        assert!(parse_algebra("profile:2").is_err());
    }

    #[test]
    fn instances_are_shared() {
        let a = parse_algebra("A:1").unwrap();
        let b = algebra(&profile::a(1)).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
