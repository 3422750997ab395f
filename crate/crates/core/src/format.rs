// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Plain-text file formats.
//!
//! Edge list:
//!
//! ```text
//! n <n> [m <m>] [seed <seed>]
//! <u> <v>
//! ...
//! ```
//!
//! Transcript: the same header, then `<u> <v> <colour>` per line, with
//! colours printed as `c:<chunk>:<local>`, `t:<i>:<j>:<k>` or `o:<serial>`.
//! Line order is stream order (announcement order for transcripts). Blank
//! lines and lines starting with `#` are ignored on input.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::colour::ColourId;
use crate::edge::{Edge, VertexId};
use crate::error::{Error, Result};
use crate::stream::{EdgeStream, StreamHeader};
use crate::transcript::{Announcement, Transcript};

pub fn parse_header(line: &str, lineno: usize) -> Result<StreamHeader> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if !toks.len().is_multiple_of(2) || toks.first() != Some(&"n") {
        return Err(Error::parse(
            lineno,
            format!("expected `n <n> [m <m>] [seed <seed>]`, got `{line}`"),
        ));
    }
    let mut n = None;
    let mut m = None;
    let mut seed = None;
    for pair in toks.chunks(2) {
        let value: u64 = pair[1]
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad number `{}`", pair[1])))?;
        let slot = match pair[0] {
            "n" => &mut n,
            "m" => &mut m,
            "seed" => &mut seed,
            other => {
                return Err(Error::parse(
                    lineno,
                    format!("unknown header key `{other}`"),
                ))
            }
        };
        if slot.replace(value).is_some() {
            return Err(Error::parse(
                lineno,
                format!("duplicate header key `{}`", pair[0]),
            ));
        }
    }
    let header = StreamHeader {
        n: n.unwrap() as usize,
        m,
        seed,
    };
    header
        .validate()
        .map_err(|e| Error::parse(lineno, e.to_string()))?;
    Ok(header)
}

fn content_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader
        .lines()
        .enumerate()
        .map(|(i, line)| line.map(|l| (i + 1, l)).map_err(Error::from))
        .filter(|r| match r {
            Ok((_, l)) => {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            }
            Err(_) => true,
        })
}

fn parse_vertex(tok: Option<&str>, lineno: usize, n: usize) -> Result<VertexId> {
    let tok = tok.ok_or_else(|| Error::parse(lineno, "missing endpoint"))?;
    let v: u32 = tok
        .parse()
        .map_err(|_| Error::parse(lineno, format!("bad vertex `{tok}`")))?;
    if v as usize >= n {
        return Err(Error::parse(
            lineno,
            format!("vertex {v} out of range for n = {n}"),
        ));
    }
    Ok(VertexId(v))
}

fn parse_edge<'a>(
    toks: &mut impl Iterator<Item = &'a str>,
    lineno: usize,
    n: usize,
) -> Result<Edge> {
    let u = parse_vertex(toks.next(), lineno, n)?;
    let v = parse_vertex(toks.next(), lineno, n)?;
    Edge::new(u, v).map_err(|e| Error::parse(lineno, e.to_string()))
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<EdgeStream> {
    let mut lines = content_lines(reader);
    let (lineno, first) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty edge list"))??;
    let header = parse_header(&first, lineno)?;
    let mut edges = Vec::new();
    for line in lines {
        let (lineno, line) = line?;
        let mut toks = line.split_whitespace();
        let e = parse_edge(&mut toks, lineno, header.n)?;
        if toks.next().is_some() {
            return Err(Error::parse(lineno, "trailing tokens after edge"));
        }
        edges.push(e);
    }
    if let Some(m) = header.m {
        if m != edges.len() as u64 {
            return Err(Error::validation(format!(
                "header declares m = {m} but {} edges follow",
                edges.len()
            )));
        }
    }
    Ok(EdgeStream { header, edges })
}

pub fn write_edge_list<W: Write>(mut w: W, stream: &EdgeStream) -> Result<()> {
    writeln!(w, "{}", stream.header)?;
    for e in &stream.edges {
        writeln!(w, "{e}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_transcript<R: BufRead>(reader: R) -> Result<Transcript> {
    let mut lines = content_lines(reader);
    let (lineno, first) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty transcript"))??;
    let mut transcript = Transcript::new(parse_header(&first, lineno)?);
    let n = transcript.header.n;
    for line in lines {
        let (lineno, line) = line?;
        let mut toks = line.split_whitespace();
        let edge = parse_edge(&mut toks, lineno, n)?;
        let colour: ColourId = toks
            .next()
            .ok_or_else(|| Error::parse(lineno, "missing colour"))?
            .parse()
            .map_err(|e: Error| Error::parse(lineno, e.to_string()))?;
        if toks.next().is_some() {
            return Err(Error::parse(lineno, "trailing tokens after colour"));
        }
        transcript.push(Announcement::new(edge, colour));
    }
    Ok(transcript)
}

pub fn write_transcript<W: Write>(mut w: W, transcript: &Transcript) -> Result<()> {
    writeln!(w, "{}", transcript.header)?;
    for a in &transcript.records {
        writeln!(w, "{} {}", a.edge, a.colour)?;
    }
    w.flush()?;
    Ok(())
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<EdgeStream> {
    read_edge_list(BufReader::new(File::open(path)?))
}

pub fn save_edge_list(path: impl AsRef<Path>, stream: &EdgeStream) -> Result<()> {
    write_edge_list(BufWriter::new(File::create(path)?), stream)
}

pub fn load_transcript(path: impl AsRef<Path>) -> Result<Transcript> {
    read_transcript(BufReader::new(File::open(path)?))
}

pub fn save_transcript(path: impl AsRef<Path>, transcript: &Transcript) -> Result<()> {
    write_transcript(BufWriter::new(File::create(path)?), transcript)
}
