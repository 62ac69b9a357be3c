//! The shipped surfaces, loaded from embedded copies or from the directory
//! named by `COLLINEAR_FIXTURES`.

use std::path::{Path, PathBuf};

use collinear_core::{CubicSurface, GaussRat, Rat, Scalar};

use crate::error::{Error, Result};
use crate::formats::{parse_cubic, split_cubic};

pub const FIXTURE_DIR_VAR: &str = "COLLINEAR_FIXTURES";

pub const NAMES: [&str; 5] = ["F1", "F2", "F3", "F4", "F5"];

fn embedded(name: &str) -> Option<&'static str> {
    Some(match name {
        "F1" => include_str!("../fixtures/F1.cubic"),
        "F2" => include_str!("../fixtures/F2.cubic"),
        "F3" => include_str!("../fixtures/F3.cubic"),
        "F4" => include_str!("../fixtures/F4.cubic"),
        "F5" => include_str!("../fixtures/F5.cubic"),
        _ => return None,
    })
}

/// A surface over either supported field.
#[derive(Clone, Debug)]
pub enum AnySurface {
    Q(CubicSurface<Rat>),
    Gauss(CubicSurface<GaussRat>),
}

impl AnySurface {
    pub fn field(&self) -> &'static str {
        match self {
            AnySurface::Q(_) => Rat::FIELD,
            AnySurface::Gauss(_) => GaussRat::FIELD,
        }
    }

    pub fn rational(&self) -> Result<&CubicSurface<Rat>> {
        match self {
            AnySurface::Q(s) => Ok(s),
            AnySurface::Gauss(_) => Err(Error::FieldMismatch { expected: Rat::FIELD, found: GaussRat::FIELD }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub surface: AnySurface,
}

/// Where fixture text comes from.
#[derive(Clone, Debug, Default)]
pub struct FixtureSource {
    dir: Option<PathBuf>,
}

impl FixtureSource {
    /// Embedded copies, or the override directory when the variable is set.
    pub fn from_env() -> Self {
        FixtureSource { dir: std::env::var_os(FIXTURE_DIR_VAR).map(PathBuf::from) }
    }

    pub fn embedded() -> Self {
        FixtureSource { dir: None }
    }

    pub fn dir(dir: impl Into<PathBuf>) -> Self {
        FixtureSource { dir: Some(dir.into()) }
    }

    pub fn text(&self, name: &str) -> Result<String> {
        match &self.dir {
            Some(d) => read(&d.join(format!("{name}.cubic"))),
            None => embedded(name).map(str::to_string).ok_or_else(|| Error::MissingFixture(PathBuf::from(name))),
        }
    }

    pub fn load(&self, name: &str) -> Result<Fixture> {
        let text = self.text(name)?;
        Ok(Fixture { name: name.to_string(), surface: surface_from_text(&text, name)? })
    }

    /// A fixture name, or a path to a fixture-format file.
    pub fn resolve(&self, selector: &str) -> Result<Fixture> {
        if NAMES.contains(&selector) {
            return self.load(selector);
        }
        let path = Path::new(selector);
        let text = read(path)?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(selector).to_string();
        let surface = surface_from_text(&text, &name)?;
        Ok(Fixture { name, surface })
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| {
        if source.kind() == std::io::ErrorKind::NotFound {
            Error::MissingFixture(path.to_path_buf())
        } else {
            Error::Io { path: path.to_path_buf(), source }
        }
    })
}

pub fn surface_from_text(text: &str, name: &str) -> Result<AnySurface> {
    Ok(match split_cubic(text)?.field {
        "Q" => {
            let (form, cert) = parse_cubic::<Rat>(text, name)?;
            AnySurface::Q(CubicSurface::new(form)?.with_certificate(cert))
        }
        _ => {
            let (form, cert) = parse_cubic::<GaussRat>(text, name)?;
            AnySurface::Gauss(CubicSurface::new(form)?.with_certificate(cert))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use collinear_core::surface::SmoothnessCertificate;
    use collinear_core::ProjPoint;

    #[test]
    fn all_fixtures_load() {
        let src = FixtureSource::embedded();
        for name in NAMES {
            let f = src.load(name).unwrap();
            assert_eq!(f.surface.field(), if name == "F5" { "Q(i)" } else { "Q" });
        }
        let f1 = src.load("F1").unwrap();
        let s = f1.surface.rational().unwrap();
        assert_eq!(s.certificate(), &SmoothnessCertificate::Asserted("F1".into()));
        for t in -5..=5 {
            assert!(s.contains(&collinear_core::orchard::cusp_point(t)));
        }
        let f4 = src.load("F4").unwrap();
        let s4 = f4.surface.rational().unwrap();
        assert!(s4.contains(&ProjPoint::from_ints([0, 3, 5, 7]).unwrap()));
        assert!(!s4.contains(&ProjPoint::from_ints([1, 3, 5, 7]).unwrap()));
        let f5 = src.load("F5").unwrap();
        let AnySurface::Gauss(s5) = &f5.surface else { panic!("F5 is over Q(i)") };
        let p = ProjPoint::new([GaussRat::one(), GaussRat::i(), GaussRat::zero(), GaussRat::zero()]).unwrap();
        assert!(s5.contains(&p));
    }

    #[test]
    fn override_directory() {
        let dir = std::env::temp_dir().join(format!("collinear-fixture-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("F1.cubic"), "field: Q\n3 0 0 0 : 1\n").unwrap();
        let src = FixtureSource::dir(&dir);
        let s = src.load("F1").unwrap();
        assert!(s.surface.rational().unwrap().contains(&ProjPoint::from_ints([0, 1, 2, 3]).unwrap()));
        assert!(matches!(src.load("F2"), Err(Error::MissingFixture(_))));
        let path = dir.join("F1.cubic");
        assert_eq!(src.resolve(path.to_str().unwrap()).unwrap().name, "F1");
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
