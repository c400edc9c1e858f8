use serde_json::{json, Value};

use super::{is_prime, FinGroup, GroupError, GroupKind};
use crate::schema::{self, child, SchemaError};

/// The JSON group descriptor:
///
/// ```json
/// {"type": "perm", "degree": 3, "generators": [[1,0,2], [1,2,0]]}
/// {"type": "matrix", "degree": 2, "p": 3, "generators": [[1,1,0,1], [[0,1],[1,0]]]}
/// ```
///
/// Permutations are image arrays. Matrices are row-major, either flat or
/// nested; entries are reduced mod `p` on ingest (negative entries allowed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDescriptor {
    Permutation {
        degree: usize,
        generators: Vec<Vec<u32>>,
    },
    Matrix {
        n: usize,
        p: u32,
        generators: Vec<Vec<u32>>,
    },
}

impl GroupDescriptor {
    pub fn from_json(v: &Value, pointer: &str) -> Result<GroupDescriptor, SchemaError> {
        let obj = schema::object(v, pointer)?;
        let kind = schema::string(
            schema::field(obj, "type", pointer)?,
            &child(pointer, "type"),
        )?;
        let degree_ptr = child(pointer, "degree");
        let degree = schema::uint(schema::field(obj, "degree", pointer)?, &degree_ptr)? as usize;
        let gens_ptr = child(pointer, "generators");
        let gens = schema::array(schema::field(obj, "generators", pointer)?, &gens_ptr)?;
        match kind {
            "perm" => {
                let mut generators = Vec::with_capacity(gens.len());
                for (g, perm) in gens.iter().enumerate() {
                    let ptr = child(&gens_ptr, g);
                    let images = schema::uint_array(perm, &ptr)?;
                    if images.len() != degree {
                        return Err(SchemaError::new(
                            ptr,
                            format!("expected {degree} images, found {}", images.len()),
                        ));
                    }
                    let mut seen = vec![false; degree];
                    for (i, &x) in images.iter().enumerate() {
                        let ptr = child(&ptr, i);
                        if x as usize >= degree {
                            return Err(SchemaError::new(
                                ptr,
                                format!("image {x} out of range 0..{degree}"),
                            ));
                        }
                        if std::mem::replace(&mut seen[x as usize], true) {
                            return Err(SchemaError::new(
                                ptr,
                                format!("image {x} repeats; not a bijection"),
                            ));
                        }
                    }
                    generators.push(images.into_iter().map(|x| x as u32).collect());
                }
                Ok(GroupDescriptor::Permutation { degree, generators })
            }
            "matrix" => {
                let p_ptr = child(pointer, "p");
                let p = schema::uint(schema::field(obj, "p", pointer)?, &p_ptr)?;
                let p = u32::try_from(p)
                    .ok()
                    .filter(|&p| is_prime(p))
                    .ok_or_else(|| SchemaError::new(&p_ptr, format!("{p} is not a prime")))?;
                let n = degree;
                let mut generators = Vec::with_capacity(gens.len());
                for (g, m) in gens.iter().enumerate() {
                    let ptr = child(&gens_ptr, g);
                    let rows = schema::array(m, &ptr)?;
                    let mut entries = Vec::with_capacity(n * n);
                    if rows.iter().all(Value::is_array) && !rows.is_empty() {
                        if rows.len() != n {
                            return Err(SchemaError::new(
                                ptr,
                                format!("expected {n} rows, found {}", rows.len()),
                            ));
                        }
                        for (r, row) in rows.iter().enumerate() {
                            let row_ptr = child(&ptr, r);
                            let row = schema::array(row, &row_ptr)?;
                            if row.len() != n {
                                return Err(SchemaError::new(
                                    row_ptr,
                                    format!("expected {n} entries, found {}", row.len()),
                                ));
                            }
                            for (c, x) in row.iter().enumerate() {
                                entries.push(schema::int(x, &child(&row_ptr, c))?);
                            }
                        }
                    } else {
                        if rows.len() != n * n {
                            return Err(SchemaError::new(
                                ptr,
                                format!("expected {} entries, found {}", n * n, rows.len()),
                            ));
                        }
                        for (i, x) in rows.iter().enumerate() {
                            entries.push(schema::int(x, &child(&ptr, i))?);
                        }
                    }
                    let reduced: Vec<u32> = entries
                        .iter()
                        .map(|x| x.rem_euclid(p as i64) as u32)
                        .collect();
                    if super::matrix_inverse(&reduced, n, p).is_none() {
                        return Err(SchemaError::new(
                            ptr,
                            format!("matrix is not invertible mod {p}"),
                        ));
                    }
                    generators.push(reduced);
                }
                Ok(GroupDescriptor::Matrix { n, p, generators })
            }
            other => Err(SchemaError::new(
                child(pointer, "type"),
                format!("unknown group type \"{other}\""),
            )),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            GroupDescriptor::Permutation { degree, generators } => {
                json!({"type": "perm", "degree": degree, "generators": generators})
            }
            GroupDescriptor::Matrix { n, p, generators } => {
                json!({"type": "matrix", "degree": n, "p": p, "generators": generators})
            }
        }
    }

    pub fn build(&self, cap: usize) -> Result<FinGroup, GroupError> {
        match self {
            GroupDescriptor::Permutation { degree, generators } => {
                FinGroup::from_permutations(*degree, generators, cap)
            }
            GroupDescriptor::Matrix { n, p, generators } => {
                FinGroup::from_matrices(*n, *p, generators, cap)
            }
        }
    }

    /// Describes an existing permutation or matrix group by its generators.
    pub fn of(group: &FinGroup) -> Option<GroupDescriptor> {
        let generators = group
            .generators()
            .iter()
            .map(|&g| group.form(g).map(<[u32]>::to_vec))
            .collect::<Option<_>>()?;
        match *group.kind() {
            GroupKind::Permutation { degree } => {
                Some(GroupDescriptor::Permutation { degree, generators })
            }
            GroupKind::Matrix { n, p } => Some(GroupDescriptor::Matrix { n, p, generators }),
            GroupKind::Table => None,
        }
    }
}
