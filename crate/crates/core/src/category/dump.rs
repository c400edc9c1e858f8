//! Canonical JSON dump of a category.
//!
//! ```json
//! {"format": 1, "order": "later-left", "objects": ["..."],
//!  "hom_sizes": [[1, 3], [0, 6]],
//!  "homs": [{"src": 0, "dst": 1, "classes": [{"id": 2, "rep": 0, "members": [0, 4]}]}],
//!  "identities": [0, 5],
//!  "composition": [[f, g, gf], ...]}
//! ```
//!
//! `order` records how representatives multiply: `later-left` means `f: i -> j`
//! then `g: j -> k` is the class of `g * f`, `later-right` the class of `f * g`.
//! Elements are indices into the group's breadth-first element list. Only
//! nonempty hom-sets are listed. Keys are sorted, so identical categories
//! produce identical bytes.

use std::sync::Arc;

use serde_json::{json, Value};

use super::{Category, MorphismClass, MulOrder};
use crate::group::{Elem, FinGroup};
use crate::schema::{self, child, SchemaError};

impl MulOrder {
    pub fn name(self) -> &'static str {
        match self {
            MulOrder::LaterLeft => "later-left",
            MulOrder::LaterRight => "later-right",
        }
    }
}

impl Category {
    pub fn to_json(&self) -> Value {
        let n = self.num_objects();
        let mut homs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let range = self.hom_range(i, j);
                if range.is_empty() {
                    continue;
                }
                let classes: Vec<Value> = range
                    .map(|f| {
                        let m = &self.morphisms[f];
                        json!({"id": f, "rep": m.rep, "members": m.members})
                    })
                    .collect();
                homs.push(json!({"src": i, "dst": j, "classes": classes}));
            }
        }
        let mut composition = Vec::with_capacity(self.compose.len());
        for f in 0..self.num_morphisms() {
            for g in self.out_range(self.morphisms[f].dst) {
                composition.push(json!([f, g, self.compose(g, f)]));
            }
        }
        json!({
            "format": 1,
            "order": self.order.name(),
            "objects": self.objects,
            "hom_sizes": self.hom_sizes(),
            "homs": homs,
            "identities": self.identities,
            "composition": composition,
        })
    }

    /// Rebuilds a category from [`Category::to_json`] output over `group`. The
    /// composition table is recomputed from the classes and must agree with
    /// the recorded one.
    pub fn from_json(
        group: &Arc<FinGroup>,
        v: &Value,
        pointer: &str,
    ) -> Result<Category, SchemaError> {
        let obj = schema::object(v, pointer)?;
        let order_ptr = child(pointer, "order");
        let order = match schema::string(schema::field(obj, "order", pointer)?, &order_ptr)? {
            "later-left" => MulOrder::LaterLeft,
            "later-right" => MulOrder::LaterRight,
            other => {
                return Err(SchemaError::new(
                    order_ptr,
                    format!("unknown order \"{other}\""),
                ))
            }
        };
        let objects_ptr = child(pointer, "objects");
        let objects = schema::array(schema::field(obj, "objects", pointer)?, &objects_ptr)?
            .iter()
            .enumerate()
            .map(|(i, o)| schema::string(o, &child(&objects_ptr, i)).map(str::to_owned))
            .collect::<Result<Vec<_>, _>>()?;
        let n = objects.len();

        let homs_ptr = child(pointer, "homs");
        let mut classes = Vec::new();
        let mut ids = Vec::new();
        for (h, hom) in schema::array(schema::field(obj, "homs", pointer)?, &homs_ptr)?
            .iter()
            .enumerate()
        {
            let ptr = child(&homs_ptr, h);
            let hom_obj = schema::object(hom, &ptr)?;
            let endpoint = |key: &str| -> Result<usize, SchemaError> {
                let p = child(&ptr, key);
                let x = schema::uint(schema::field(hom_obj, key, &ptr)?, &p)? as usize;
                if x >= n {
                    return Err(SchemaError::new(p, format!("object {x} out of range")));
                }
                Ok(x)
            };
            let (src, dst) = (endpoint("src")?, endpoint("dst")?);
            let classes_ptr = child(&ptr, "classes");
            for (c, class) in schema::array(schema::field(hom_obj, "classes", &ptr)?, &classes_ptr)?
                .iter()
                .enumerate()
            {
                let cptr = child(&classes_ptr, c);
                let cobj = schema::object(class, &cptr)?;
                let members_ptr = child(&cptr, "members");
                let members =
                    schema::uint_array(schema::field(cobj, "members", &cptr)?, &members_ptr)?;
                if members.is_empty() {
                    return Err(SchemaError::new(members_ptr, "empty class"));
                }
                let members = members
                    .iter()
                    .enumerate()
                    .map(|(k, &x)| {
                        if (x as usize) < group.order() {
                            Ok(Elem::from_index(x as usize))
                        } else {
                            Err(SchemaError::new(
                                child(&members_ptr, k),
                                format!("element {x} out of range"),
                            ))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                ids.push((
                    cptr.clone(),
                    schema::uint(schema::field(cobj, "id", &cptr)?, &child(&cptr, "id"))?,
                ));
                classes.push(MorphismClass { src, dst, members });
            }
        }
        let category = Category::from_classes(group, objects, classes, order)
            .map_err(|e| SchemaError::new(&homs_ptr, e.to_string()))?;
        // Classes are listed in canonical order, so ids must count up from 0.
        for (k, (ptr, id)) in ids.iter().enumerate() {
            if *id as usize != k {
                return Err(SchemaError::new(
                    child(ptr, "id"),
                    format!("expected id {k}, found {id}"),
                ));
            }
        }
        let comp_ptr = child(pointer, "composition");
        let recorded = schema::array(schema::field(obj, "composition", pointer)?, &comp_ptr)?;
        let expected = category.to_json();
        if let Some(k) = recorded
            .iter()
            .zip(expected["composition"].as_array().into_iter().flatten())
            .position(|(a, b)| a != b)
            .or_else(|| {
                (recorded.len() != category.compose.len())
                    .then_some(recorded.len().min(category.compose.len()))
            })
        {
            return Err(SchemaError::new(
                child(&comp_ptr, k),
                "composition disagrees with the classes",
            ));
        }
        Ok(category)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::build_category;
    use crate::lie::FlagPoset;

    #[test]
    fn dump_round_trips() {
        let flags = FlagPoset::new(2, 2).unwrap();
        let c = build_category(flags.gposet()).unwrap();
        let dump = c.to_json();
        assert_eq!(
            dump["hom_sizes"],
            json!([[1, 1, 1, 3], [1, 1, 1, 3], [1, 1, 1, 3], [0, 0, 0, 6]])
        );
        let back = Category::from_json(c.group(), &dump, "").unwrap();
        assert_eq!(back, c);
        assert_eq!(
            serde_json::to_string(&back.to_json()).unwrap(),
            serde_json::to_string(&dump).unwrap()
        );

        let op = Category::from_json(c.group(), &c.opposite().unwrap().to_json(), "").unwrap();
        assert_eq!(op.opposite().unwrap().to_json(), dump);
    }

    #[test]
    fn tampered_composition_is_rejected() {
        let flags = FlagPoset::new(2, 2).unwrap();
        let c = build_category(flags.gposet()).unwrap();
        let mut dump = c.to_json();
        let last = dump["composition"].as_array().unwrap().len() - 1;
        dump["composition"][last][2] = json!(0);
        let err = Category::from_json(c.group(), &dump, "").unwrap_err();
        assert_eq!(err.pointer, format!("/composition/{last}"));
    }
}
