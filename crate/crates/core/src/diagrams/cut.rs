use super::certificate::ReductionCertificate;
use super::chord::rotate;
use crate::symplectic::{SignedColor, Spider};
use crate::{Error, Result};

pub(crate) struct CutPieces {
    pub left: Vec<SignedColor>,
    pub right: Vec<SignedColor>,
    pub coeff: i64,
    pub corrections: Vec<(Vec<SignedColor>, i64)>,
}

fn sign(x: SignedColor) -> i64 {
    x.signum()
}

/// Cuts the contiguous region `B = w[start .. start+len]` off the rest `A`
/// with a new chord of color `n`:
/// `S(w) = sign(n)·[S(A,n), S(−n,B)] + Σ corrections`, one correction for each
/// chord joining `A` to `B`.
pub(crate) fn cut_raw(w: &[SignedColor], start: usize, len: usize, n: SignedColor) -> CutPieces {
    let v = rotate(w, start % w.len());
    let (b, a) = v.split_at(len);
    let mut corrections = Vec::new();
    for (p, &ap) in a.iter().enumerate() {
        for (q, &bq) in b.iter().enumerate() {
            if ap != -bq {
                continue;
            }
            let mut t: Vec<SignedColor> = a[p + 1..].to_vec();
            t.push(n);
            t.extend_from_slice(&a[..p]);
            t.extend_from_slice(&b[q + 1..]);
            t.push(-n);
            t.extend_from_slice(&b[..q]);
            corrections.push((t, -sign(n) * sign(ap)));
        }
    }
    let mut left = a.to_vec();
    left.push(n);
    let mut right = vec![-n];
    right.extend_from_slice(b);
    CutPieces { left, right, coeff: sign(n), corrections }
}

/// The cut identity as a certificate fragment: one bracket term plus the
/// correction spiders as remainder.
pub fn cut(s: &Spider, start: usize, len: usize, fresh: SignedColor) -> Result<ReductionCertificate> {
    let w = s.colors();
    if start >= w.len() || len < 1 || len >= w.len() {
        return Err(Error::BadArc(format!("region ({start}, {len}) on a spider of length {}", w.len())));
    }
    if fresh == 0 || w.iter().any(|c| c.unsigned_abs() == fresh.unsigned_abs()) {
        return Err(Error::InvalidParameter(format!("color {fresh} is not fresh")));
    }
    let pieces = cut_raw(&w, start, len, fresh);
    let mut cert = ReductionCertificate::empty(s.clone());
    cert.push_cut(&pieces, 1)?;
    for (t, c) in &pieces.corrections {
        cert.push_remainder(Spider::new(t)?, *c);
    }
    cert.log_fresh(fresh);
    Ok(cert)
}
