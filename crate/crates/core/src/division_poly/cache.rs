//! One file per polynomial: a header line `ring=<tag> m=<m> parity=<0|1>`
//! followed by the canonical term list. Anything that does not parse, does not
//! match the request, or fails the cheap shape checks is ignored and
//! recomputed.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::finite_field::Ring;
use crate::weighted_poly::{parse_xpoly, Weight, XPoly};

pub const CACHE_FORMAT_VERSION: &str = "1";

fn file_name(tag: &str, m: u32) -> String {
    let safe: String = tag.chars().filter(char::is_ascii_alphanumeric).collect();
    format!("psi_{safe}_{m}.txt")
}

fn path_for(dir: &Path, tag: &str, m: u32) -> PathBuf {
    dir.join(file_name(tag, m))
}

fn header(tag: &str, m: u32, parity: bool) -> String {
    format!("ring={tag} m={m} parity={}", u8::from(parity))
}

/// Degree, leading coefficient and weight that `psi_m` must have.
fn plausible<R: Ring>(ring: &R, m: u32, p: &XPoly<R>) -> bool {
    let m = m as usize;
    let (deg, weight) = if m % 2 == 1 {
        ((m * m - 1) / 2, (m * m - 1) / 2)
    } else {
        ((m * m - 4) / 2, (m * m - 4) / 2)
    };
    let lead = ring.from_i64(m as i64);
    if ring.is_zero(&lead) {
        // leading term vanishes mod p, only the weight is checkable
        return p.degree().is_some_and(|d| d < deg)
            && p.weight_of().ok() == Some(Weight::Homogeneous(weight as u32));
    }
    p.degree() == Some(deg)
        && p.lead().map(|c| c.terms().len() == 1 && c.terms()[0].1 == lead) == Some(true)
        && p.weight_of().ok() == Some(Weight::Homogeneous(weight as u32))
}

pub(super) fn load<R: Ring>(dir: &Path, ring: &R, m: u32) -> Option<XPoly<R>> {
    let text = fs::read_to_string(path_for(dir, &ring.tag(), m)).ok()?;
    let (head, body) = text.split_once('\n')?;
    let parity = m.is_multiple_of(2);
    if head.trim() != header(&ring.tag(), m, parity) {
        return None;
    }
    let p = parse_xpoly(ring, body.trim(), parity).ok()?;
    plausible(ring, m, &p).then_some(p)
}

pub(super) fn store<R: Ring>(dir: &Path, ring: &R, m: u32, p: &XPoly<R>) -> Result<()> {
    fs::create_dir_all(dir)?;
    let tag = ring.tag();
    let target = path_for(dir, &tag, m);
    let tmp = target.with_extension("tmp");
    fs::write(&tmp, format!("{}\n{}\n", header(&tag, m, p.parity()), p))?;
    fs::rename(tmp, target)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::division_poly::DivPolyTable;
    use crate::finite_field::PrimeField;

    #[test]
    fn roundtrip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let f = PrimeField::new(7).unwrap();
        let mut t = DivPolyTable::with_cache(f, dir.path());
        let psi9 = t.get(9).unwrap();
        let file = dir.path().join("psi_Fp7_9.txt");
        let text = fs::read_to_string(&file).unwrap();
        assert!(text.starts_with("ring=Fp:7 m=9 parity=0\n"));
        assert_eq!(load(dir.path(), &f, 9), Some(psi9.clone()));

        fs::write(&file, "ring=Fp:7 m=9 parity=0\n1*x^3 + garbage").unwrap();
        assert_eq!(load(dir.path(), &f, 9), None);
        fs::write(&file, "ring=Fp:7 m=9 parity=0\n1*x^40").unwrap();
        assert_eq!(load(dir.path(), &f, 9), None);
        fs::write(&file, "ring=Fp:11 m=9 parity=0\n").unwrap();
        assert_eq!(load(dir.path(), &f, 9), None);

        let mut fresh = DivPolyTable::with_cache(f, dir.path());
        assert_eq!(fresh.get(9).unwrap(), psi9);
        assert_eq!(load(dir.path(), &f, 9), Some(psi9));
    }
}
