//! Compact group-spec strings for the command line: `c4`, `ab2x2`, `d3`,
//! `q8`, `heis3`, `modext(3,2)`, `sd(c9,c2,inv)`, `sd(c7,c9,pow2)`,
//! `a4`, `dic3`, `file:PATH`.

use crate::catalog::{alternating_4, dicyclic_3};
use crate::error::{Error, Result};
use crate::group::{
    cyclic, dihedral, heisenberg, make_group, modular_ext, parse_group_file, quaternion, Action,
    FiniteGroup, GroupSpec,
};

pub fn parse_spec(s: &str) -> Result<FiniteGroup> {
    let s = s.trim();
    if let Some(path) = s.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)?;
        return parse_group_file(path, &text);
    }
    if s == "a4" {
        return Ok(alternating_4());
    }
    if s == "dic3" {
        return Ok(dicyclic_3());
    }
    if let Some(rest) = s.strip_prefix("ab") {
        let factors: Result<Vec<usize>> = rest
            .split('x')
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|_| Error::InvalidSpec(format!("bad abelian factor '{}' in '{}'", p, s)))
            })
            .collect();
        return crate::group::abelian(&factors?);
    }
    if let Some(rest) = s.strip_prefix("modext(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::InvalidSpec(format!("missing ')' in '{}'", s)))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::InvalidSpec(format!(
                "modext takes two arguments: '{}'",
                s
            )));
        }
        let p = parse_num(parts[0], s)?;
        let n = parse_num(parts[1], s)?;
        return modular_ext(p, n);
    }
    if let Some(rest) = s.strip_prefix("sd(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::InvalidSpec(format!("missing ')' in '{}'", s)))?;
        let parts = split_top_level(inner);
        if parts.len() != 3 {
            return Err(Error::InvalidSpec(format!(
                "sd takes (K, H, action): '{}'",
                s
            )));
        }
        let k = parse_spec(&parts[0])?;
        let h = parse_spec(&parts[1])?;
        let action = parse_action(&parts[2], s)?;
        let raw = |g: FiniteGroup| GroupSpec::Raw {
            name: g.name.clone(),
            table: g.table().clone(),
        };
        let spec = GroupSpec::Semidirect {
            k: Box::new(raw(k)),
            h: Box::new(raw(h)),
            action,
        };
        return make_group(&spec);
    }
    if let Some(rest) = s.strip_prefix("heis") {
        return heisenberg(parse_num(rest, s)?);
    }
    if let Some(rest) = s.strip_prefix('c') {
        if let Ok(n) = rest.parse::<usize>() {
            return cyclic(n);
        }
    }
    if let Some(rest) = s.strip_prefix('d') {
        if let Ok(n) = rest.parse::<usize>() {
            return dihedral(n);
        }
    }
    if let Some(rest) = s.strip_prefix('q') {
        if let Ok(n) = rest.parse::<usize>() {
            return quaternion(n);
        }
    }
    Err(Error::InvalidSpec(format!("unrecognized group spec '{}'", s)))
}

fn parse_num(p: &str, whole: &str) -> Result<usize> {
    p.trim()
        .parse::<usize>()
        .map_err(|_| Error::InvalidSpec(format!("bad number '{}' in '{}'", p, whole)))
}

fn parse_action(p: &str, whole: &str) -> Result<Action> {
    let p = p.trim();
    if p == "inv" {
        return Ok(Action::Inv);
    }
    if let Some(rest) = p.strip_prefix("pow") {
        return Ok(Action::Pow(parse_num(rest, whole)?));
    }
    Err(Error::InvalidSpec(format!(
        "unknown action '{}' in '{}'",
        p, whole
    )))
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            ',' if depth == 0 => {
                parts.push(cur.trim().to_string());
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    parts.push(cur.trim().to_string());
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::is_isomorphic;

    #[test]
    fn basic_specs() {
        assert_eq!(parse_spec("c4").unwrap().order(), 4);
        assert_eq!(parse_spec("ab2x2").unwrap().order(), 4);
        assert_eq!(parse_spec("d3").unwrap().order(), 6);
        assert_eq!(parse_spec("q8").unwrap().order(), 8);
        assert_eq!(parse_spec("heis3").unwrap().order(), 27);
        assert_eq!(parse_spec("modext(3,2)").unwrap().order(), 27);
        assert_eq!(parse_spec("a4").unwrap().order(), 12);
        assert_eq!(parse_spec("dic3").unwrap().order(), 12);
    }

    #[test]
    fn semidirect_specs() {
        let g = parse_spec("sd(c9,c2,inv)").unwrap();
        assert_eq!(g.order(), 18);
        assert!(is_isomorphic(&g, &dihedral(9).unwrap()).is_some());
        let g63 = parse_spec("sd(c7,c9,pow2)").unwrap();
        assert_eq!(g63.order(), 63);
        assert!(!g63.is_abelian());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_spec("x17").is_err());
        assert!(parse_spec("sd(c9,c2)").is_err());
        assert!(parse_spec("abZx2").is_err());
        assert!(parse_spec("sd(c9,c2,pow)").is_err());
    }
}
