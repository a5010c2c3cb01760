//! Optional on-disk cache of generator spectral data, keyed by a content
//! hash of the geometry. Purely an optimization: results are bit-identical
//! with the cache disabled, because the stored floats are exact.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use faer::{c64, Mat};
use sha2::{Digest, Sha256};

use crate::cavity::CavityConfig;
use crate::error::{HarvestError, Result};
use crate::evolution::PropagatorGenerator;

const MAGIC: &[u8; 6] = b"HVGEN\0";
const FORMAT_VERSION: u32 = 1;

/// Content hash of a geometry, over the exact bit patterns of its fields.
pub fn config_key(cfg: &CavityConfig) -> String {
    let mut hasher = Sha256::new();
    hasher.update(MAGIC);
    hasher.update(FORMAT_VERSION.to_le_bytes());
    hasher.update((cfg.n_field_modes as u64).to_le_bytes());
    for v in [
        cfg.length,
        cfg.detector_frequency,
        cfg.coupling,
        cfg.x1,
        cfg.x2,
    ] {
        hasher.update(v.to_bits().to_le_bytes());
    }
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// A cache directory holding one file per geometry.
#[derive(Debug, Clone)]
pub struct GeneratorCache {
    dir: PathBuf,
}

impl GeneratorCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn path_for(&self, cfg: &CavityConfig) -> PathBuf {
        self.dir.join(format!("{}.hvgen", config_key(cfg)))
    }

    /// Loads the generator for `cfg` if cached, otherwise builds and stores
    /// it. Store failures are non-fatal (the build result is still returned).
    pub fn load_or_build(&self, cfg: &CavityConfig) -> Result<PropagatorGenerator> {
        let path = self.path_for(cfg);
        if path.is_file() {
            if let Ok(gen) = read_generator(&path, cfg) {
                return Ok(gen);
            }
        }
        let gen = PropagatorGenerator::build(cfg)?;
        if let Err(err) = self.store(&path, &gen) {
            eprintln!("warning: could not write generator cache: {err}");
        }
        Ok(gen)
    }

    fn store(&self, path: &Path, gen: &PropagatorGenerator) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|source| HarvestError::Io {
            path: self.dir.display().to_string(),
            source,
        })?;
        let tmp = path.with_extension("tmp");
        write_generator(&tmp, gen).map_err(|source| HarvestError::Io {
            path: tmp.display().to_string(),
            source,
        })?;
        fs::rename(&tmp, path).map_err(|source| HarvestError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

fn write_complex(out: &mut impl Write, values: impl Iterator<Item = c64>) -> io::Result<()> {
    for v in values {
        out.write_all(&v.re.to_le_bytes())?;
        out.write_all(&v.im.to_le_bytes())?;
    }
    Ok(())
}

fn write_generator(path: &Path, gen: &PropagatorGenerator) -> io::Result<()> {
    let mut out = io::BufWriter::new(fs::File::create(path)?);
    let dim = gen.dim();
    out.write_all(MAGIC)?;
    out.write_all(&FORMAT_VERSION.to_le_bytes())?;
    out.write_all(&(dim as u64).to_le_bytes())?;
    write_complex(&mut out, gen.eigenvalues().iter().copied())?;
    // column-major, matching the read path
    write_complex(
        &mut out,
        (0..dim).flat_map(|j| (0..dim).map(move |i| (i, j))).map(|(i, j)| gen.vectors()[(i, j)]),
    )?;
    write_complex(
        &mut out,
        (0..dim)
            .flat_map(|j| (0..dim).map(move |i| (i, j)))
            .map(|(i, j)| gen.inverse_vectors()[(i, j)]),
    )?;
    out.flush()
}

fn read_generator(path: &Path, cfg: &CavityConfig) -> Result<PropagatorGenerator> {
    let io_err = |source| HarvestError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut file = io::BufReader::new(fs::File::open(path).map_err(io_err)?);
    let mut header = [0u8; 6];
    file.read_exact(&mut header).map_err(io_err)?;
    if &header != MAGIC {
        return Err(HarvestError::Numerical(format!(
            "{}: not a generator cache file",
            path.display()
        )));
    }
    let mut word = [0u8; 4];
    file.read_exact(&mut word).map_err(io_err)?;
    if u32::from_le_bytes(word) != FORMAT_VERSION {
        return Err(HarvestError::Numerical(format!(
            "{}: unsupported cache version",
            path.display()
        )));
    }
    let mut long = [0u8; 8];
    file.read_exact(&mut long).map_err(io_err)?;
    let dim = u64::from_le_bytes(long) as usize;
    if dim != cfg.dim() {
        return Err(HarvestError::Dimension {
            expected: cfg.dim(),
            got: dim,
        });
    }

    let mut next = || -> Result<c64> {
        let mut re = [0u8; 8];
        let mut im = [0u8; 8];
        file.read_exact(&mut re).map_err(io_err)?;
        file.read_exact(&mut im).map_err(io_err)?;
        Ok(c64::new(f64::from_le_bytes(re), f64::from_le_bytes(im)))
    };

    let mut eigenvalues = Vec::with_capacity(dim);
    for _ in 0..dim {
        eigenvalues.push(next()?);
    }
    let read_matrix = |next: &mut dyn FnMut() -> Result<c64>| -> Result<Mat<c64>> {
        let mut m = Mat::<c64>::zeros(dim, dim);
        for j in 0..dim {
            for i in 0..dim {
                m[(i, j)] = next()?;
            }
        }
        Ok(m)
    };
    let vectors = read_matrix(&mut next)?;
    let inverse_vectors = read_matrix(&mut next)?;
    PropagatorGenerator::from_raw_parts(*cfg, eigenvalues, vectors, inverse_vectors)
}
