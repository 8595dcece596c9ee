//! Text and image formats: edge lists, node sets, `i,x` signal CSV,
//! `key = value` reports and PGM images.
//!
//! Numbers are written with Rust's shortest round-trip formatting, `\n` line
//! endings throughout.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::generators::GreyImage;
use crate::graph::{Graph, NodeSet};
use crate::signal::NodeSignal;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses `i j w` lines. The node count is `n` if given, else the largest id seen.
pub fn parse_edge_list(text: &str, n: Option<usize>) -> Result<Graph> {
    let mut edges = Vec::new();
    for (line, l) in content_lines(text) {
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(line, format!("expected `i j w`, got {l:?}")));
        }
        let i: usize = fields[0].parse().map_err(|_| parse_err(line, "bad node id"))?;
        let j: usize = fields[1].parse().map_err(|_| parse_err(line, "bad node id"))?;
        let w: f64 = fields[2].parse().map_err(|_| parse_err(line, "bad weight"))?;
        edges.push((i, j, w));
    }
    let n = match n {
        Some(n) => n,
        None => edges.iter().map(|&(i, j, _)| i.max(j)).max().unwrap_or(0),
    };
    Graph::new(n, &edges)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (&(i, j), w) in g.edges().iter().zip(g.weights()) {
        writeln!(out, "{i} {j} {w}").unwrap();
    }
    out
}

/// One node id per line.
pub fn parse_node_set(text: &str, n: usize) -> Result<NodeSet> {
    let mut ids = Vec::new();
    for (line, l) in content_lines(text) {
        ids.push(l.parse::<usize>().map_err(|_| parse_err(line, format!("bad node id {l:?}")))?);
    }
    NodeSet::new(ids, n)
}

pub fn format_node_set(s: &NodeSet) -> String {
    let mut out = String::new();
    for i in s.ids() {
        writeln!(out, "{i}").unwrap();
    }
    out
}

/// `i,x` header followed by one row per node, optionally only the first `limit` nodes.
pub fn format_signal_csv(x: &NodeSignal, limit: Option<usize>) -> String {
    let take = limit.unwrap_or(x.len()).min(x.len());
    let mut out = String::from("i,x\n");
    for (k, v) in x.0.iter().take(take).enumerate() {
        writeln!(out, "{},{}", k + 1, v).unwrap();
    }
    out
}

pub fn parse_signal_csv(text: &str) -> Result<NodeSignal> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == "i,x" => {}
        _ => return Err(parse_err(1, "missing `i,x` header")),
    }
    let mut values = Vec::new();
    for (k, l) in lines {
        if l.trim().is_empty() {
            continue;
        }
        let (i, v) = l
            .split_once(',')
            .ok_or_else(|| parse_err(k + 1, "expected `i,x`"))?;
        let i: usize = i.trim().parse().map_err(|_| parse_err(k + 1, "bad index"))?;
        if i != values.len() + 1 {
            return Err(parse_err(k + 1, "rows must be consecutive from 1"));
        }
        values.push(v.trim().parse().map_err(|_| parse_err(k + 1, "bad value"))?);
    }
    Ok(NodeSignal(values))
}

pub fn format_key_values<K: AsRef<str>>(pairs: &[(K, String)]) -> String {
    let mut out = String::new();
    for (k, v) in pairs {
        writeln!(out, "{} = {}", k.as_ref(), v).unwrap();
    }
    out
}

/// Parses `key = value` lines; `#` comments and blank lines are skipped.
pub fn parse_key_values(text: &str) -> Result<Vec<(String, String)>> {
    content_lines(text)
        .map(|(line, l)| {
            let (k, v) = l
                .split_once('=')
                .ok_or_else(|| parse_err(line, format!("expected `key = value`, got {l:?}")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

/// Reads an ASCII (`P2`) or binary (`P5`) greymap with maxval at most 255.
pub fn read_pgm(bytes: &[u8]) -> Result<GreyImage> {
    let mut pos = 0usize;
    let mut header = Vec::with_capacity(4);
    while header.len() < 4 {
        let tok = next_token(bytes, &mut pos).ok_or_else(|| parse_err(0, "truncated PGM header"))?;
        header.push(tok);
    }
    let magic = header[0].clone();
    let num = |s: &str, what: &str| -> Result<usize> {
        s.parse().map_err(|_| parse_err(0, format!("bad PGM {what} {s:?}")))
    };
    let width = num(&header[1], "width")?;
    let height = num(&header[2], "height")?;
    let maxval = num(&header[3], "maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(parse_err(0, format!("unsupported PGM maxval {maxval}")));
    }
    let count = width * height;
    let pixels: Vec<u8> = match magic.as_str() {
        "P2" => {
            let mut px = Vec::with_capacity(count);
            for _ in 0..count {
                let tok = next_token(bytes, &mut pos).ok_or_else(|| parse_err(0, "truncated PGM data"))?;
                let v = num(&tok, "pixel")?;
                if v > maxval {
                    return Err(parse_err(0, format!("pixel {v} exceeds maxval")));
                }
                px.push(v as u8);
            }
            px
        }
        "P5" => {
            // exactly one whitespace byte separates maxval from the raster
            pos += 1;
            let data = bytes
                .get(pos..pos + count)
                .ok_or_else(|| parse_err(0, "truncated PGM raster"))?;
            if let Some(&v) = data.iter().find(|&&v| v as usize > maxval) {
                return Err(parse_err(0, format!("pixel {v} exceeds maxval")));
            }
            data.to_vec()
        }
        other => return Err(parse_err(0, format!("not a greymap: magic {other:?}"))),
    };
    GreyImage::new(width, height, pixels)
}

fn next_token(bytes: &[u8], pos: &mut usize) -> Option<String> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() && bytes[*pos] != b'#' {
        *pos += 1;
    }
    (start < *pos).then(|| String::from_utf8_lossy(&bytes[start..*pos]).into_owned())
}

/// Binary `P5` greymap with maxval 255.
pub fn write_pgm(img: &GreyImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&img.pixels);
    out
}
