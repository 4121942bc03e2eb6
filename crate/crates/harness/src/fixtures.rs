//! Randomized search for family members no construction covers, and the
//! on-disk fixture store `<dir>/<family>/<params>.matroid`.

use std::fs;
use std::path::{Path, PathBuf};

use detachable::connectivity::is_3connected;
use detachable::detach::has_no_detachable_pair;
use detachable::families::{check_family, fixture_stem, gen_matroid, Family, FamilySpec};
use detachable::io::{parse_matroid, write_matroid};
use detachable::recognizers::{recognize_even_fan_spike, Certificate};
use detachable::{Error, LinearRep, Matroid, Result};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::sampler::instance_rng;

const PRIMES: [u32; 4] = [11, 13, 17, 19];

/// Draws up to `budget` candidates for `spec` and returns the first that
/// passes the family recognizer, 3-connectivity and the pair check.
/// `Ok(None)` means the budget ran out.
pub fn fixture_search(spec: &FamilySpec, budget: u64, seed: u64) -> Result<Option<Matroid>> {
    if spec.family.is_graph_family() {
        return Err(Error::Precondition(format!(
            "{} is graphic; generate it directly",
            spec.family
        )));
    }
    match gen_matroid(spec) {
        Ok(m) => return Ok(Some(m)),
        Err(Error::UnsupportedParameters(_)) => {}
        Err(e) => return Err(e),
    }
    if spec.family != Family::EvenFanSpike {
        return Ok(None);
    }
    let legs = spec
        .get_list("legs")?
        .ok_or_else(|| Error::Parameter("even_fan_spike: missing legs".into()))?;
    let tip_cotip = spec.get_flag("tip_cotip")?;
    let mut rng = instance_rng(seed, 0);
    for _ in 0..budget {
        let rep = if tip_cotip {
            tip_cotip_template(&mut rng, &legs)
        } else {
            spike_template(&mut rng, &legs)
        };
        let m = Matroid::from_gfp(&rep?)?;
        if accepts(&m, &legs, tip_cotip)? {
            let m = if spec.dualized()? { m.dual() } else { m };
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn accepts(m: &Matroid, legs: &[usize], tip_cotip: bool) -> Result<bool> {
    if !is_3connected(m) {
        return Ok(false);
    }
    let mut want = legs.to_vec();
    want.sort_unstable();
    let lens = |petals: &[Vec<usize>]| {
        let mut l: Vec<usize> = petals.iter().map(Vec::len).collect();
        l.sort_unstable();
        l
    };
    let shape = match recognize_even_fan_spike(m)? {
        Some(Certificate::EvenFanSpikeTipCotip { petals, .. }) if tip_cotip => {
            lens(&petals) == want
        }
        Some(Certificate::EvenFanSpike { petals }) if !tip_cotip => lens(&petals) == want,
        _ => false,
    };
    Ok(shape && has_no_detachable_pair(m)?)
}

fn unit(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn axpy(a: i64, x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(x, y)| a * x + y).collect()
}

fn nonzero<R: Rng>(rng: &mut R, p: u32) -> i64 {
    rng.gen_range(1..p as i64)
}

/// Pushes leg `(a, b)` grown by `len/2 − 1` fan steps on fresh coordinates.
fn grow<R: Rng>(
    rng: &mut R,
    p: u32,
    cols: &mut Vec<Vec<i64>>,
    a: Vec<i64>,
    b: Vec<i64>,
    len: usize,
    next: &mut usize,
) {
    let dim = a.len();
    let mut head = (a, b);
    let mut tail = Vec::new();
    for _ in 0..len / 2 - 1 {
        let u = unit(dim, *next);
        *next += 1;
        let d = nonzero(rng, p);
        tail.push(head.1.clone());
        tail.push(u.clone());
        head = (axpy(d, &u, &head.0), axpy(d, &u, &head.1));
    }
    cols.push(head.0);
    cols.push(head.1);
    cols.extend(tail.into_iter().rev());
}

/// Legs `{e_i, e_i + w}` for a random common direction `w`, then grown.
fn spike_template<R: Rng>(rng: &mut R, legs: &[usize]) -> Result<LinearRep> {
    let p = *PRIMES.choose(rng).expect("nonempty");
    let r = legs.len();
    let dim = r + legs.iter().map(|l| l / 2 - 1).sum::<usize>();
    let mut w = vec![0; dim];
    w[..r].iter_mut().for_each(|x| *x = nonzero(rng, p));
    let mut cols = Vec::new();
    let mut next = r;
    for (i, &len) in legs.iter().enumerate() {
        let a = unit(dim, i);
        let b = axpy(1, &w, &a);
        grow(rng, p, &mut cols, a, b, len, &mut next);
    }
    LinearRep::from_columns(p, dim, &cols)
}

/// Tip `x = e_0`, legs `{e_i, e_i + α_i x}` grown as above, and a cotip with
/// random coordinates.
fn tip_cotip_template<R: Rng>(rng: &mut R, legs: &[usize]) -> Result<LinearRep> {
    let p = *PRIMES.choose(rng).expect("nonempty");
    let r = legs.len();
    let dim = 1 + r + legs.iter().map(|l| l / 2 - 1).sum::<usize>();
    let x = unit(dim, 0);
    let mut cols = vec![x.clone()];
    let mut next = 1 + r;
    for (i, &len) in legs.iter().enumerate() {
        let a = unit(dim, 1 + i);
        let b = axpy(nonzero(rng, p), &x, &a);
        grow(rng, p, &mut cols, a, b, len, &mut next);
    }
    let y: Vec<i64> = (0..dim)
        .map(|i| {
            if i <= r {
                nonzero(rng, p)
            } else {
                rng.gen_range(0..p as i64)
            }
        })
        .collect();
    cols.push(y);
    LinearRep::from_columns(p, dim, &cols)
}

pub fn fixture_path(dir: &Path, spec: &FamilySpec) -> PathBuf {
    dir.join(spec.family.tag())
        .join(format!("{}.matroid", fixture_stem(spec)))
}

pub fn write_fixture(dir: &Path, spec: &FamilySpec, m: &Matroid) -> Result<PathBuf> {
    let path = fixture_path(dir, spec);
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(&path, write_matroid(m))?;
    Ok(path)
}

/// Every fixture under `dir`, re-validated against the spec its path names.
pub fn load_fixtures(dir: &Path) -> Result<Vec<(FamilySpec, Matroid)>> {
    if !dir.exists() {
        return Ok(Vec::new());
    }
    let mut paths = Vec::new();
    for fam in fs::read_dir(dir)? {
        let fam = fam?.path();
        if !fam.is_dir() {
            continue;
        }
        for f in fs::read_dir(&fam)? {
            let f = f?.path();
            if f.extension().is_some_and(|e| e == "matroid") {
                paths.push(f);
            }
        }
    }
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let fam = path
                .parent()
                .and_then(Path::file_name)
                .and_then(|s| s.to_str())
                .unwrap_or_default();
            let stem = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or_default();
            let spec: FamilySpec = format!("{fam}/{stem}").parse()?;
            let m = parse_matroid(&fs::read_to_string(&path)?)?;
            check_family(&m, &spec)
                .map_err(|e| Error::ConstructionBug(format!("{}: {e}", path.display())))?;
            Ok((spec, m))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graphic_families_are_refused() {
        let spec: FamilySpec = "wheel/n=7".parse().unwrap();
        assert!(matches!(
            fixture_search(&spec, 10, 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn constructible_specs_come_back_directly() {
        let spec: FamilySpec = "even_fan_spike/legs=4:4:4:2".parse().unwrap();
        let m = fixture_search(&spec, 0, 0).unwrap().unwrap();
        assert_eq!(m.size(), 14);
    }

    #[test]
    fn random_spike_template_finds_a_member() {
        let spec: FamilySpec = "even_fan_spike/legs=4:4:2:2".parse().unwrap();
        let mut rng = instance_rng(1, 0);
        let found = (0..50).any(|_| {
            let m = Matroid::from_gfp(&spike_template(&mut rng, &[4, 4, 2, 2]).unwrap()).unwrap();
            accepts(&m, &[4, 4, 2, 2], false).unwrap()
        });
        assert!(found, "{spec}");
    }
}
