//! NDJSON ball cache.
//!
//! First line `{"fmt":"ball-v1","group":"bs:q=2","r":6}`, then one
//! `{"k":"<key>","d":<distance>}` per element in index order.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ball::{build_ball, BallIndex, GroupModel};
use crate::bs::BsParams;
use crate::error::{Error, Result};

pub const CACHE_FORMAT: &str = "ball-v1";
pub const CACHE_DIR_ENV: &str = "CONVEXITY_CACHE_DIR";

/// A group named by its descriptor: `bs:q=K` or `stallings`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupSpec {
    Bs(BsParams),
    Stallings,
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "stallings" {
            return Ok(GroupSpec::Stallings);
        }
        let q = s
            .strip_prefix("bs:q=")
            .and_then(|q| q.parse::<u32>().ok())
            .ok_or_else(|| Error::BadDescriptor(s.to_string()))?;
        Ok(GroupSpec::Bs(BsParams::new(q)?))
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupSpec::Bs(p) => f.write_str(&p.descriptor()),
            GroupSpec::Stallings => f.write_str("stallings"),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    fmt: String,
    group: String,
    r: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct Record {
    k: String,
    d: u32,
}

/// `$CONVEXITY_CACHE_DIR`, else `.convexity-cache` in the working directory.
pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".convexity-cache"))
}

pub fn cache_path(dir: &Path, descriptor: &str, r: u32) -> PathBuf {
    let name: String = descriptor.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    dir.join(format!("ball-{name}-r{r}.ndjson"))
}

pub fn write_ball<M: GroupModel>(path: &Path, model: &M, ball: &BallIndex<M::Elem>) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let mut out = BufWriter::new(File::create(path)?);
    let header = Header { fmt: CACHE_FORMAT.into(), group: model.descriptor(), r: ball.radius() };
    serde_json::to_writer(&mut out, &header)?;
    out.write_all(b"\n")?;
    for i in 0..ball.len() as u32 {
        serde_json::to_writer(&mut out, &Record { k: model.key(ball.elem(i)), d: ball.dist_of(i) })?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_ball<M: GroupModel>(path: &Path, model: &M) -> Result<BallIndex<M::Elem>> {
    let mut lines = BufReader::new(File::open(path)?).lines();
    let first = lines.next().ok_or_else(|| Error::CacheFormat("empty file".into()))??;
    let header: Header = serde_json::from_str(&first)?;
    if header.fmt != CACHE_FORMAT {
        return Err(Error::CacheFormat(format!("unsupported format '{}'", header.fmt)));
    }
    if header.group != model.descriptor() {
        return Err(Error::CacheFormat(format!("cache is for '{}', not '{}'", header.group, model.descriptor())));
    }
    let mut layers: Vec<Vec<(String, M::Elem)>> = vec![Vec::new(); header.r as usize + 1];
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: Record = serde_json::from_str(&line)?;
        let layer = layers
            .get_mut(rec.d as usize)
            .ok_or_else(|| Error::CacheFormat(format!("distance {} beyond radius {}", rec.d, header.r)))?;
        let e = model.parse_key(&rec.k)?;
        layer.push((rec.k, e));
    }
    let layers = layers
        .into_iter()
        .map(|mut l| {
            l.sort_by(|a, b| a.0.cmp(&b.0));
            l.into_iter().map(|(_, e)| e).collect()
        })
        .collect();
    Ok(BallIndex::from_parts(header.r, model.letters(), layers, |g, l| model.mul_letter(g, l)))
}

/// Reads `B(r)` from `dir` when present, otherwise builds and writes it.
/// The flag is true on a cache hit.
pub fn load_or_build<M: GroupModel>(dir: &Path, model: &M, r: u32, cap: usize) -> Result<(BallIndex<M::Elem>, bool)> {
    let path = cache_path(dir, &model.descriptor(), r);
    if path.exists() {
        return Ok((read_ball(&path, model)?, true));
    }
    let ball = build_ball(model, r, cap)?;
    write_ball(&path, model, &ball)?;
    Ok((ball, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bs::BsParams;
    use crate::stallings::Stallings;

    fn same<M: GroupModel>(m: &M, a: &BallIndex<M::Elem>, b: &BallIndex<M::Elem>) {
        assert_eq!(a.len(), b.len());
        assert_eq!(a.sphere_sizes(), b.sphere_sizes());
        for i in 0..a.len() as u32 {
            assert_eq!(m.key(a.elem(i)), m.key(b.elem(i)));
            assert_eq!(a.dist_of(i), b.dist_of(i));
        }
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let g = BsParams::new(3).unwrap();
        let ball = build_ball(&g, 5, 1_000_000).unwrap();
        let path = cache_path(dir.path(), &g.descriptor(), 5);
        write_ball(&path, &g, &ball).unwrap();
        same(&g, &ball, &read_ball(&path, &g).unwrap());

        let s = Stallings;
        let ball = build_ball(&s, 2, 1_000_000).unwrap();
        let (first, hit) = load_or_build(dir.path(), &s, 2, 1_000_000).unwrap();
        assert!(!hit);
        let (second, hit) = load_or_build(dir.path(), &s, 2, 1_000_000).unwrap();
        assert!(hit);
        same(&s, &ball, &first);
        same(&s, &ball, &second);
    }

    #[test]
    fn descriptors_round_trip() {
        for d in ["bs:q=2", "bs:q=7", "bs:q=256", "stallings"] {
            assert_eq!(d.parse::<GroupSpec>().unwrap().to_string(), d);
        }
        assert!(matches!("bs:q=1".parse::<GroupSpec>(), Err(Error::InvalidParams(_))));
        assert!(matches!("bs:2".parse::<GroupSpec>(), Err(Error::BadDescriptor(_))));
    }

    #[test]
    fn rejects_wrong_group() {
        let dir = tempfile::tempdir().unwrap();
        let g = BsParams::new(2).unwrap();
        let path = cache_path(dir.path(), "x", 1);
        write_ball(&path, &g, &build_ball(&g, 1, 100).unwrap()).unwrap();
        assert!(matches!(read_ball(&path, &BsParams::new(3).unwrap()), Err(Error::CacheFormat(_))));
    }
}
