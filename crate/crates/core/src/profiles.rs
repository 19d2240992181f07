//! Built-in device profiles.
//!
//! Each named profile is a pair of JSON files, `<name>.topology.json` and
//! `<name>.durations.json`. Copies ship inside the crate; setting
//! `CYCO_PROFILE_DIR` makes the loader prefer files found in that directory.
//! The coupling maps are approximate reconstructions of the public devices.

use std::path::PathBuf;

use crate::circuit::DurationTable;
use crate::error::{Error, Result};
use crate::topology::Topology;

pub const PROFILE_DIR_ENV: &str = "CYCO_PROFILE_DIR";

/// Named profiles other than the generated `grid:RxC` family.
pub const BUILTIN_PROFILES: &[&str] = &["brisbane-127", "sycamore-53", "aspen-m", "ankaa-q3"];

fn embedded(name: &str) -> Option<(&'static str, &'static str)> {
    macro_rules! profile {
        ($n:literal) => {
            (
                include_str!(concat!("../profiles/", $n, ".topology.json")),
                include_str!(concat!("../profiles/", $n, ".durations.json")),
            )
        };
    }
    Some(match name {
        "brisbane-127" => profile!("brisbane-127"),
        "sycamore-53" => profile!("sycamore-53"),
        "aspen-m" => profile!("aspen-m"),
        "ankaa-q3" => profile!("ankaa-q3"),
        _ => return None,
    })
}

const GRID_DURATIONS: &str = include_str!("../profiles/grid.durations.json");

fn override_file(file: &str) -> Result<Option<String>> {
    let Some(dir) = std::env::var_os(PROFILE_DIR_ENV) else {
        return Ok(None);
    };
    let path = PathBuf::from(dir).join(file);
    if path.is_file() {
        Ok(Some(std::fs::read_to_string(path)?))
    } else {
        Ok(None)
    }
}

fn parse_grid(spec: &str) -> Option<(usize, usize)> {
    let (r, c) = spec.split_once(['x', 'X'])?;
    let rows = r.trim().parse().ok()?;
    let cols = c.trim().parse().ok()?;
    (rows > 0 && cols > 0).then_some((rows, cols))
}

/// Looks up a device by name: `grid:RxC`, `brisbane-127`, `sycamore-53`,
/// `aspen-m` or `ankaa-q3`.
pub fn builtin_profile(name: &str) -> Result<(Topology, DurationTable)> {
    let key = name.trim().to_ascii_lowercase();
    if let Some(spec) = key.strip_prefix("grid:") {
        let (rows, cols) = parse_grid(spec).ok_or_else(|| Error::UnknownProfile(name.to_string()))?;
        let durations = match override_file("grid.durations.json")? {
            Some(text) => DurationTable::from_json(&text)?,
            None => DurationTable::from_json(GRID_DURATIONS)?,
        };
        return Ok((Topology::grid(rows, cols), durations));
    }
    let (topo, durs) = embedded(&key).ok_or_else(|| Error::UnknownProfile(name.to_string()))?;
    let topo = override_file(&format!("{key}.topology.json"))?.unwrap_or_else(|| topo.to_string());
    let durs = override_file(&format!("{key}.durations.json"))?.unwrap_or_else(|| durs.to_string());
    Ok((Topology::from_json(&topo)?, DurationTable::from_json(&durs)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateKind;
    use crate::topology::{all_pairs_distance, DistanceMatrix};

    fn connected(t: &Topology) -> bool {
        let dm = all_pairs_distance(t);
        let usable: Vec<_> = (0..t.num_qubits()).filter(|&q| t.is_usable(q)).collect();
        usable
            .iter()
            .all(|&q| dm.get(usable[0], q) != DistanceMatrix::INF)
    }

    #[test]
    fn grid_profile() {
        let (t, d) = builtin_profile("grid:3x4").unwrap();
        assert_eq!(t.num_qubits(), 12);
        assert_eq!(t.num_edges(), 17);
        assert_eq!(d.cycles_for(GateKind::lookup("iswap").unwrap()).unwrap(), 6);
        assert_eq!(d.cycles_for(GateKind::lookup("cz").unwrap()).unwrap(), 2);
        assert_eq!(d.cycles_for(GateKind::lookup("rz").unwrap()).unwrap(), 1);
    }

    #[test]
    fn brisbane_is_heavy_hex() {
        let (t, d) = builtin_profile("brisbane-127").unwrap();
        assert_eq!(t.num_qubits(), 127);
        assert_eq!(t.num_edges(), 144);
        assert!((0..127).all(|q| t.neighbors(q).len() <= 3));
        assert!(connected(&t));
        assert_eq!(d.gates["ecr"], 660.0);
    }

    #[test]
    fn sycamore_band() {
        let (t, d) = builtin_profile("sycamore-53").unwrap();
        assert_eq!(t.num_usable(), 53);
        assert!(connected(&t));
        for k in d.kinds().into_iter().filter(|k| k.arity() == 2) {
            let ns = d.gates[k.name()];
            assert!((12.0..=32.0).contains(&ns), "{k} = {ns}");
        }
    }

    #[test]
    fn rigetti_profiles() {
        for name in ["aspen-m", "ankaa-q3"] {
            let (t, d) = builtin_profile(name).unwrap();
            assert!(connected(&t), "{name}");
            assert_eq!(d.gates["cz"], 160.0);
            assert_eq!(d.gates["rz"], 60.0);
        }
    }

    #[test]
    fn unknown_profile() {
        assert!(matches!(builtin_profile("falcon-27"), Err(Error::UnknownProfile(_))));
        assert!(matches!(builtin_profile("grid:3"), Err(Error::UnknownProfile(_))));
        assert!(matches!(builtin_profile("grid:0x3"), Err(Error::UnknownProfile(_))));
    }
}
