//! The interchange JSON schema for decorated graphs:
//! `{"generators":[{"id":...,"idem":0|1}],
//!   "edges":[{"from":...,"to":...,"label":"321"|null}],
//!   "marks":{"contact":id,"contact_alt":id,"loss":[id,id]}}`.

use serde::{Deserialize, Serialize};

use crate::error::{input_err, Result};
use crate::graphs::{Marks, TypeAGraph, TypeDGraph};
use crate::torus::{Gen, Idem};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub generators: Vec<GenJson>,
    pub edges: Vec<EdgeJson>,
    #[serde(default, skip_serializing_if = "MarksJson::is_empty")]
    pub marks: MarksJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenJson {
    pub id: String,
    pub idem: u8,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: String,
    pub to: String,
    pub label: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct MarksJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contact: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contact_alt: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loss: Option<(String, String)>,
}

impl MarksJson {
    pub fn is_empty(&self) -> bool {
        self.contact.is_none() && self.contact_alt.is_none() && self.loss.is_none()
    }
}

fn marks_out(names: &[String], m: &Marks) -> MarksJson {
    MarksJson {
        contact: m.contact.map(|i| names[i].clone()),
        contact_alt: m.contact_alt.map(|i| names[i].clone()),
        loss: m.loss.map(|(a, b)| (names[a].clone(), names[b].clone())),
    }
}

fn marks_in(index: &std::collections::HashMap<&str, usize>, m: &MarksJson) -> Result<Marks> {
    let look = |name: &Option<String>| -> Result<Option<usize>> {
        match name {
            None => Ok(None),
            Some(n) => index
                .get(n.as_str())
                .copied()
                .map(Some)
                .ok_or_else(|| crate::error::Error::Input(format!("unknown mark {n:?}"))),
        }
    };
    Ok(Marks {
        contact: look(&m.contact)?,
        contact_alt: look(&m.contact_alt)?,
        loss: match &m.loss {
            None => None,
            Some((a, b)) => Some((
                look(&Some(a.clone()))?.unwrap(),
                look(&Some(b.clone()))?.unwrap(),
            )),
        },
    })
}

pub fn type_a_to_json(g: &TypeAGraph) -> GraphJson {
    GraphJson {
        generators: g
            .names
            .iter()
            .zip(&g.idems)
            .map(|(n, i)| GenJson { id: n.clone(), idem: i.index() })
            .collect(),
        edges: g
            .edges
            .iter()
            .map(|(a, b, l)| EdgeJson {
                from: g.names[*a].clone(),
                to: g.names[*b].clone(),
                label: Some(l.clone()),
            })
            .collect(),
        marks: marks_out(&g.names, &g.marks),
    }
}

pub fn type_d_to_json(g: &TypeDGraph) -> GraphJson {
    GraphJson {
        generators: g
            .names
            .iter()
            .zip(&g.idems)
            .map(|(n, i)| GenJson { id: n.clone(), idem: i.index() })
            .collect(),
        edges: g
            .edges
            .iter()
            .map(|(a, b, l)| EdgeJson {
                from: g.names[*a].clone(),
                to: g.names[*b].clone(),
                label: l.map(|gen| gen.digits().unwrap().to_string()),
            })
            .collect(),
        marks: marks_out(&g.names, &g.marks),
    }
}

fn index_names(j: &GraphJson) -> Result<(Vec<String>, Vec<Idem>, std::collections::HashMap<&str, usize>)> {
    let mut names = Vec::with_capacity(j.generators.len());
    let mut idems = Vec::with_capacity(j.generators.len());
    let mut index = std::collections::HashMap::new();
    for (i, g) in j.generators.iter().enumerate() {
        if index.insert(g.id.as_str(), i).is_some() {
            return input_err(format!("duplicate generator id {:?}", g.id));
        }
        names.push(g.id.clone());
        idems.push(Idem::from_index(g.idem)?);
    }
    Ok((names, idems, index))
}

pub fn type_a_from_json(j: &GraphJson) -> Result<TypeAGraph> {
    let (names, idems, index) = index_names(j)?;
    let mut edges = Vec::with_capacity(j.edges.len());
    for e in &j.edges {
        let a = *index.get(e.from.as_str()).ok_or_else(|| {
            crate::error::Error::Input(format!("unknown generator {:?}", e.from))
        })?;
        let b = *index.get(e.to.as_str()).ok_or_else(|| {
            crate::error::Error::Input(format!("unknown generator {:?}", e.to))
        })?;
        let label = e
            .label
            .clone()
            .ok_or_else(|| crate::error::Error::Input("unlabeled edge in a Type A graph".into()))?;
        edges.push((a, b, label));
    }
    let marks = marks_in(&index, &j.marks)?;
    Ok(TypeAGraph { names, idems, edges, marks })
}

pub fn type_d_from_json(j: &GraphJson) -> Result<TypeDGraph> {
    let (names, idems, index) = index_names(j)?;
    let mut edges = Vec::with_capacity(j.edges.len());
    for e in &j.edges {
        let a = *index.get(e.from.as_str()).ok_or_else(|| {
            crate::error::Error::Input(format!("unknown generator {:?}", e.from))
        })?;
        let b = *index.get(e.to.as_str()).ok_or_else(|| {
            crate::error::Error::Input(format!("unknown generator {:?}", e.to))
        })?;
        let label = match &e.label {
            None => None,
            Some(s) => Some(Gen::from_digits(s)?),
        };
        edges.push((a, b, label));
    }
    let marks = marks_in(&index, &j.marks)?;
    Ok(TypeDGraph { names, idems, edges, marks })
}
