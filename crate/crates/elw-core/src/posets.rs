//! Brute-force enumeration of strict partial orders on small labeled point
//! sets, one representative per isomorphism class, ordered by canonical
//! form. Shared by the Kripke frame catalog and the algebra enumerator.

/// Strict-order matrices on `k` points, canonically sorted. `k = 0` yields
/// the single empty order.
pub(crate) fn strict_posets(k: usize) -> Vec<Vec<Vec<bool>>> {
    if k == 0 {
        return vec![vec![]];
    }
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut reps: Vec<(Vec<bool>, Vec<Vec<bool>>)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    'cand: for mask in 0u32..(1 << pairs.len()) {
        let mut rel = vec![vec![false; k]; k];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1 << b) != 0 {
                rel[i][j] = true;
            }
        }
        for i in 0..k {
            for j in 0..k {
                if rel[i][j] && rel[j][i] {
                    continue 'cand;
                }
                for l in 0..k {
                    if rel[i][j] && rel[j][l] && !rel[i][l] {
                        continue 'cand;
                    }
                }
            }
        }
        let cert = canonical_form(&rel, k);
        if seen.insert(cert.clone()) {
            reps.push((cert, rel));
        }
    }
    reps.sort();
    reps.into_iter().map(|(_, rel)| rel).collect()
}

/// Lexicographically least row-major matrix over all relabelings.
pub(crate) fn canonical_form(rel: &[Vec<bool>], k: usize) -> Vec<bool> {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut best: Option<Vec<bool>> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut flat = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                flat.push(rel[p[i]][p[j]]);
            }
        }
        if best.as_ref().map_or(true, |b| flat < *b) {
            best = Some(flat);
        }
    });
    best.unwrap_or_default()
}

fn permute(perm: &mut Vec<usize>, i: usize, visit: &mut impl FnMut(&[usize])) {
    if i == perm.len() {
        visit(perm);
        return;
    }
    for j in i..perm.len() {
        perm.swap(i, j);
        permute(perm, i + 1, visit);
        perm.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_unlabeled_poset_numbers() {
        // Posets on 0..=4 points up to isomorphism: 1, 1, 2, 5, 16.
        assert_eq!(strict_posets(0).len(), 1);
        assert_eq!(strict_posets(1).len(), 1);
        assert_eq!(strict_posets(2).len(), 2);
        assert_eq!(strict_posets(3).len(), 5);
        assert_eq!(strict_posets(4).len(), 16);
    }

    #[test]
    fn enumeration_is_canonically_sorted() {
        for k in 1..=4 {
            let certs: Vec<Vec<bool>> = strict_posets(k)
                .iter()
                .map(|r| canonical_form(r, k))
                .collect();
            let mut sorted = certs.clone();
            sorted.sort();
            assert_eq!(certs, sorted);
        }
    }
}
