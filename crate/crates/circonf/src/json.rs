//! The shared JSON formats: configurations, motion paths, labeled trees, and
//! group elements.
//!
//! Output is byte-deterministic: struct fields serialize in a fixed order,
//! map keys are sorted, and rationals print as canonical lowest-terms
//! strings (`p` or `p/q`, optional leading minus).

use crate::baut::BautElement;
use crate::braid::BraidWord;
use crate::forest::{parse_shape, LabeledNode, LabeledRootedTree, RootedTree};
use crate::geometry::{Circle, LabeledConfiguration};
use crate::motion::{Keyframe, MotionPath};
use crate::rational::{format_rat, parse_rat};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("json syntax error: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("format error: {0}")]
    Format(String),
}

fn format_err(msg: impl Into<String>) -> JsonError {
    JsonError::Format(msg.into())
}

// ---------- configurations ----------

#[derive(Serialize, Deserialize)]
struct CircleDto {
    label: usize,
    cx: String,
    cy: String,
    r: String,
}

#[derive(Serialize, Deserialize)]
struct ConfigDto {
    circles: Vec<CircleDto>,
}

fn config_to_dto(config: &LabeledConfiguration) -> ConfigDto {
    ConfigDto {
        circles: config
            .labels()
            .map(|l| {
                let c = config.circle(l);
                CircleDto {
                    label: l,
                    cx: format_rat(&c.cx),
                    cy: format_rat(&c.cy),
                    r: format_rat(&c.r),
                }
            })
            .collect(),
    }
}

fn config_from_dto(dto: &ConfigDto) -> Result<LabeledConfiguration, JsonError> {
    let n = dto.circles.len();
    let mut circles: Vec<Option<Circle>> = vec![None; n];
    for c in &dto.circles {
        if c.label == 0 || c.label > n {
            return Err(format_err(format!("label {} outside 1..={n}", c.label)));
        }
        if circles[c.label - 1].is_some() {
            return Err(format_err(format!("duplicate label {}", c.label)));
        }
        let parse = |s: &str| parse_rat(s).map_err(format_err);
        circles[c.label - 1] =
            Some(Circle::new(parse(&c.cx)?, parse(&c.cy)?, parse(&c.r)?));
    }
    Ok(LabeledConfiguration::new_unchecked(
        circles.into_iter().map(|c| c.expect("all labels present")).collect(),
    ))
}

/// Serializes a configuration; labels print in increasing order.
pub fn config_to_json(config: &LabeledConfiguration) -> String {
    serde_json::to_string(&config_to_dto(config)).expect("serialization cannot fail")
}

/// Parses a configuration. Labels must be exactly `1..=n` in any order;
/// geometric validity is not checked here (see `validate_configuration`).
pub fn config_from_json(text: &str) -> Result<LabeledConfiguration, JsonError> {
    config_from_dto(&serde_json::from_str(text)?)
}

// ---------- motion paths ----------

#[derive(Serialize, Deserialize)]
struct KeyframeDto {
    t: String,
    config: ConfigDto,
}

#[derive(Serialize, Deserialize)]
struct PathDto {
    keyframes: Vec<KeyframeDto>,
}

pub fn path_to_json(path: &MotionPath) -> String {
    let dto = PathDto {
        keyframes: path
            .keyframes()
            .iter()
            .map(|kf| KeyframeDto { t: format_rat(&kf.t), config: config_to_dto(&kf.config) })
            .collect(),
    };
    serde_json::to_string(&dto).expect("serialization cannot fail")
}

pub fn path_from_json(text: &str) -> Result<MotionPath, JsonError> {
    let dto: PathDto = serde_json::from_str(text)?;
    let keyframes = dto
        .keyframes
        .iter()
        .map(|kf| {
            Ok(Keyframe {
                t: parse_rat(&kf.t).map_err(format_err)?,
                config: config_from_dto(&kf.config)?,
            })
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    MotionPath::new(keyframes).map_err(|e| format_err(e.to_string()))
}

// ---------- labeled trees ----------

#[derive(Serialize, Deserialize)]
struct LabeledNodeDto {
    children: Vec<LabeledNodeDto>,
    label: usize,
}

#[derive(Serialize, Deserialize)]
struct LabeledTreeDto {
    children: Vec<LabeledNodeDto>,
}

fn node_to_dto(node: &LabeledNode) -> LabeledNodeDto {
    LabeledNodeDto {
        children: node.children.iter().map(node_to_dto).collect(),
        label: node.label,
    }
}

fn node_from_dto(dto: &LabeledNodeDto) -> LabeledNode {
    LabeledNode {
        label: dto.label,
        children: dto.children.iter().map(node_from_dto).collect(),
    }
}

pub fn labeled_tree_to_json(tree: &LabeledRootedTree) -> String {
    let dto = LabeledTreeDto { children: tree.children.iter().map(node_to_dto).collect() };
    serde_json::to_string(&dto).expect("serialization cannot fail")
}

pub fn labeled_tree_from_json(text: &str) -> Result<LabeledRootedTree, JsonError> {
    let dto: LabeledTreeDto = serde_json::from_str(text)?;
    LabeledRootedTree::new(dto.children.iter().map(node_from_dto).collect())
        .map_err(|e| format_err(e.to_string()))
}

// ---------- group elements ----------

#[derive(Serialize, Deserialize)]
struct ElementDto {
    tree: String,
    braids: BTreeMap<String, String>,
}

fn path_key(path: &[usize]) -> String {
    path.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
}

fn parse_path_key(key: &str) -> Result<Vec<usize>, JsonError> {
    if key.is_empty() {
        return Ok(Vec::new());
    }
    key.split('.')
        .map(|part| {
            part.parse::<usize>()
                .map_err(|_| format_err(format!("bad vertex path {key:?}")))
        })
        .collect()
}

/// Serializes an element as its tree shape code plus the nonempty vertex
/// braid words keyed by dot-separated child-index paths (root key is `""`).
pub fn element_to_json(element: &BautElement) -> String {
    let braids: BTreeMap<String, String> = element
        .vertex_braids()
        .into_iter()
        .filter(|(_, w)| !w.is_empty())
        .map(|(path, w)| (path_key(&path), w.to_string()))
        .collect();
    let dto = ElementDto { tree: element.shape().ordered_code(), braids };
    serde_json::to_string(&dto).expect("serialization cannot fail")
}

/// Parses an element; vertices missing from `braids` carry the empty word.
/// All element invariants (strand counts, type-partition membership) are
/// re-checked.
pub fn element_from_json(text: &str) -> Result<BautElement, JsonError> {
    let dto: ElementDto = serde_json::from_str(text)?;
    let shape: RootedTree =
        parse_shape(&dto.tree).map_err(|e| format_err(format!("bad tree code: {e}")))?;
    let mut braids: BTreeMap<Vec<usize>, BraidWord> = BTreeMap::new();
    for (key, word) in &dto.braids {
        let path = parse_path_key(key)?;
        let vertex = shape
            .subtree(&path)
            .map_err(|_| format_err(format!("no vertex at path {key:?}")))?;
        let parsed = BraidWord::parse(vertex.children.len(), word)
            .map_err(|e| format_err(format!("braid at {key:?}: {e}")))?;
        braids.insert(path, parsed);
    }
    BautElement::from_vertex_braids(&shape, &braids).map_err(|e| format_err(e.to_string()))
}
