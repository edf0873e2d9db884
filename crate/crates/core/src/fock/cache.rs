//! On-disk cache of monomial products.
//!
//! One UTF-8 text file per engine, named `products-v1-<hash>.tsv` where
//! `<hash>` is the first 16 hex digits of the SHA-256 of the engine label.
//! Layout, fields separated by tabs:
//!
//! ```text
//! permorb-product-cache 1
//! voa <engine label>
//! <left monomial> <n> <right monomial> <coef>=<monomial> ...
//! ```
//!
//! Monomials use the `gen(-level)` display form (`1` for the vacuum);
//! coefficients are `p/q` for rationals and the JSON term list for
//! polynomials. A file with the wrong version, the wrong label or any
//! unparsable line is treated as corrupt and ignored.

use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::engine::Engine;
use super::monomial::Monomial;
use super::scalar::Scalar;
use super::vector::FockVector;
use super::voa::Voa;

const MAGIC: &str = "permorb-product-cache";
const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheLoad {
    Missing,
    Loaded(usize),
    /// The file was unusable; the engine starts empty.
    Corrupt(String),
}

pub fn cache_path<V: Voa>(dir: &Path, e: &Engine<V>) -> PathBuf {
    let digest = Sha256::digest(e.voa().label().as_bytes());
    dir.join(format!("products-v{VERSION}-{}.tsv", &hex::encode(digest)[..16]))
}

fn parse_entry<S: Scalar>(line: &str) -> Option<((Monomial, i64, Monomial), FockVector<S>)> {
    let mut fields = line.split('\t');
    let mu: Monomial = fields.next()?.parse().ok()?;
    let n: i64 = fields.next()?.parse().ok()?;
    let mv: Monomial = fields.next()?.parse().ok()?;
    let mut v = FockVector::zero();
    for f in fields {
        let (c, m) = f.split_once('=')?;
        v.add_term(m.parse().ok()?, S::decode(c)?);
    }
    Some(((mu, n, mv), v))
}

/// Seeds the engine's product memo from `dir`.
pub fn load<V: Voa>(dir: &Path, e: &Engine<V>) -> CacheLoad {
    let path = cache_path(dir, e);
    let Ok(file) = fs::File::open(&path) else { return CacheLoad::Missing };
    let mut lines = BufReader::new(file).lines();
    let header = format!("{MAGIC}\t{VERSION}");
    match lines.next() {
        Some(Ok(l)) if l == header => {}
        _ => return CacheLoad::Corrupt(format!("{}: bad header", path.display())),
    }
    match lines.next() {
        Some(Ok(l)) if l.strip_prefix("voa\t") == Some(e.voa().label().as_str()) => {}
        _ => return CacheLoad::Corrupt(format!("{}: label mismatch", path.display())),
    }
    let mut entries = Vec::new();
    for (i, line) in lines.enumerate() {
        let parsed = line.ok().and_then(|l| parse_entry::<V::S>(&l));
        match parsed {
            Some(entry) => entries.push(entry),
            None => return CacheLoad::Corrupt(format!("{}: unreadable entry on line {}", path.display(), i + 3)),
        }
    }
    let n = entries.len();
    for (k, v) in entries {
        e.seed_memo(k, v);
    }
    CacheLoad::Loaded(n)
}

/// Writes the engine's memo to `dir`, replacing any previous file atomically.
pub fn save<V: Voa>(dir: &Path, e: &Engine<V>) -> io::Result<usize> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, e);
    let tmp = path.with_extension("tmp");
    let mut entries = e.memo_entries();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        writeln!(w, "{MAGIC}\t{VERSION}")?;
        writeln!(w, "voa\t{}", e.voa().label())?;
        for ((mu, n, mv), v) in &entries {
            write!(w, "{mu}\t{n}\t{mv}")?;
            for (m, c) in v.terms() {
                write!(w, "\t{}={m}", c.encode())?;
            }
            writeln!(w)?;
        }
        w.flush()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(entries.len())
}
