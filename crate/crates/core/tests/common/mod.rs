//! Brute-force oracles shared by the integration and acceptance tests. They
//! use only dense `i128` arithmetic and explicit multiplication tables, not
//! the library's chain complexes or Smith normal form.

#![allow(dead_code)]

/// Homology in one degree: free rank and invariant factors greater than one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    pub rank: usize,
    pub torsion: Vec<i128>,
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Nonzero Smith invariants of a dense matrix, in divisibility order.
pub fn smith(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if m[r][c] != 0 && best.is_none_or(|(br, bc)| m[r][c].abs() < m[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        let mut clean = true;
        for r in t + 1..rows {
            let q = m[r][t] / m[t][t];
            if q != 0 {
                for c in t..cols {
                    m[r][c] -= q * m[t][c];
                }
            }
            clean &= m[r][t] == 0;
        }
        for c in t + 1..cols {
            let q = m[t][c] / m[t][t];
            if q != 0 {
                for row in m.iter_mut().skip(t) {
                    row[c] -= q * row[t];
                }
            }
            clean &= m[t][c] == 0;
        }
        if clean {
            diag.push(m[t][t].abs());
            t += 1;
        }
    }
    // Fix divisibility with gcd/lcm swaps.
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let (a, b) = (diag[i], diag[j]);
            let g = gcd(a, b);
            diag[i] = g;
            diag[j] = a / g * b;
        }
    }
    diag
}

/// Homology of a complex given by dense boundary matrices `d[k]: C_k -> C_{k-1}`
/// (`d[0]` empty), in degrees `0..ranks.len() - 1`.
pub fn homology(ranks: &[usize], d: &[Vec<Vec<i128>>]) -> Vec<Hom> {
    let invariants: Vec<Vec<i128>> = d.iter().map(|m| smith(m.clone())).collect();
    (0..ranks.len() - 1)
        .map(|k| {
            let outgoing = if k == 0 { 0 } else { invariants[k].len() };
            let incoming = &invariants[k + 1];
            Hom {
                rank: ranks[k] - outgoing - incoming.len(),
                torsion: incoming.iter().copied().filter(|&x| x > 1).collect(),
            }
        })
        .collect()
}

/// A group as a multiplication table with identity `0`.
pub struct TableGroup {
    pub mul: Vec<Vec<usize>>,
}

impl TableGroup {
    pub fn order(&self) -> usize {
        self.mul.len()
    }
}

/// `S_n` from all permutations, composed as functions.
pub fn symmetric_group(n: usize) -> TableGroup {
    let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut k = 0;
    while k < perms.len() {
        let p = perms[k].clone();
        for i in 0..n {
            for j in i + 1..n {
                let mut q = p.clone();
                q.swap(i, j);
                if !perms.contains(&q) {
                    perms.push(q);
                }
            }
        }
        k += 1;
    }
    let index = |q: &Vec<usize>| perms.iter().position(|p| p == q).unwrap();
    let mul = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| index(&b.iter().map(|&x| a[x]).collect()))
                .collect()
        })
        .collect();
    TableGroup { mul }
}

pub fn cyclic_group(n: usize) -> TableGroup {
    TableGroup {
        mul: (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect(),
    }
}

/// Group homology `H_0..H_top` with coefficients in `Z` twisted by a character
/// `chi: G -> {1, -1}`, from the normalised bar complex.
pub fn bar_homology(group: &TableGroup, chi: &dyn Fn(usize) -> i128, top: usize) -> Vec<Hom> {
    let nonid: Vec<usize> = (1..group.order()).collect();
    let mut chains: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for k in 1..=top + 1 {
        let next = chains[k - 1]
            .iter()
            .flat_map(|c| nonid.iter().map(move |&g| [c.as_slice(), &[g]].concat()))
            .collect();
        chains.push(next);
    }
    let ranks: Vec<usize> = chains.iter().map(Vec::len).collect();
    let mut d = vec![Vec::new()];
    for k in 1..=top + 1 {
        let index = |c: &[usize]| chains[k - 1].iter().position(|x| x.as_slice() == c);
        let mut m = vec![vec![0i128; ranks[k]]; ranks[k - 1]];
        for (col, c) in chains[k].iter().enumerate() {
            // g1 acts on the coefficient and is dropped.
            if let Some(r) = index(&c[1..]) {
                m[r][col] += chi(c[0]);
            }
            for i in 0..k - 1 {
                let prod = group.mul[c[i]][c[i + 1]];
                if prod == 0 {
                    continue;
                }
                let mut face = c[..i].to_vec();
                face.push(prod);
                face.extend_from_slice(&c[i + 2..]);
                let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                m[index(&face).unwrap()][col] += sign;
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            m[index(&c[..k - 1]).unwrap()][col] += sign;
        }
        d.push(m);
    }
    homology(&ranks, &d)
}

pub fn library_homology(h: &[exitcat::homotopy::HomologyGroup]) -> Vec<Hom> {
    h.iter()
        .map(|g| Hom {
            rank: g.rank,
            torsion: g
                .torsion
                .iter()
                .map(|t| i128::try_from(t).unwrap())
                .collect(),
        })
        .collect()
}

/// `H_k(Z/2; Z)`: `Z`, then `Z/2` in odd degrees and `0` in even ones.
pub fn z2_trivial(k: usize) -> Hom {
    match k {
        0 => Hom {
            rank: 1,
            torsion: vec![],
        },
        k if k % 2 == 1 => Hom {
            rank: 0,
            torsion: vec![2],
        },
        _ => Hom {
            rank: 0,
            torsion: vec![],
        },
    }
}

/// `H_k(Z/2; Z with the sign action)`: `Z/2` in even degrees, `0` in odd ones.
pub fn z2_sign(k: usize) -> Hom {
    if k % 2 == 0 {
        Hom {
            rank: 0,
            torsion: vec![2],
        }
    } else {
        Hom {
            rank: 0,
            torsion: vec![],
        }
    }
}

/// `#{g in GL_2(F_2) : g l = l'}` for lines `l, l'` of `F_2^2`, by listing matrices.
pub fn gl22_line_transporter(l: [u8; 2], l2: [u8; 2]) -> usize {
    let mut count = 0;
    for bits in 0..16u8 {
        let m = [
            [bits & 1, (bits >> 1) & 1],
            [(bits >> 2) & 1, (bits >> 3) & 1],
        ];
        if (m[0][0] * m[1][1] + m[0][1] * m[1][0]) % 2 == 0 {
            continue;
        }
        let image = [
            (m[0][0] * l[0] + m[0][1] * l[1]) % 2,
            (m[1][0] * l[0] + m[1][1] * l[1]) % 2,
        ];
        count += usize::from(image == l2);
    }
    count
}

/// Nerve homology `H_0..H_top` from the composition table alone: chains of
/// non-identity composable morphisms, dense boundaries, dense Smith form.
pub fn dense_nerve_homology(cat: &exitcat::category::Category, top: usize) -> Vec<Hom> {
    let mut chains: Vec<Vec<Vec<usize>>> = vec![(0..cat.num_objects()).map(|o| vec![o]).collect()];
    // Degree 0 chains are objects; higher ones are arrow lists.
    let arrows: Vec<usize> = (0..cat.num_morphisms())
        .filter(|&f| !cat.is_identity(f))
        .collect();
    chains.push(arrows.iter().map(|&f| vec![f]).collect());
    for k in 2..=top + 1 {
        let mut next = Vec::new();
        for c in &chains[k - 1] {
            let last = cat.morphism(*c.last().unwrap()).dst;
            for &g in &arrows {
                if cat.morphism(g).src == last {
                    next.push([c.as_slice(), &[g]].concat());
                }
            }
        }
        chains.push(next);
    }
    let ranks: Vec<usize> = chains.iter().map(Vec::len).collect();
    let mut d = vec![Vec::new()];
    for k in 1..=top + 1 {
        let position = |c: &[usize]| {
            chains[k - 1]
                .iter()
                .position(|x| x.as_slice() == c)
                .unwrap()
        };
        let mut m = vec![vec![0i128; ranks[k]]; ranks[k - 1]];
        for (col, c) in chains[k].iter().enumerate() {
            if k == 1 {
                let f = cat.morphism(c[0]);
                m[f.dst][col] += 1;
                m[f.src][col] -= 1;
                continue;
            }
            for j in 0..=k {
                let face: Vec<usize> = if j == 0 {
                    c[1..].to_vec()
                } else if j == k {
                    c[..k - 1].to_vec()
                } else {
                    let composite = cat.compose(c[j], c[j - 1]);
                    if cat.is_identity(composite) {
                        continue;
                    }
                    [&c[..j - 1], &[composite], &c[j + 1..]].concat()
                };
                let sign = if j % 2 == 0 { 1 } else { -1 };
                m[position(&face)][col] += sign;
            }
        }
        d.push(m);
    }
    homology(&ranks, &d)
}
