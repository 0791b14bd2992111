//! `symlife generate`: build a symmetric network from a generator
//! description and write it as a network file.

use std::path::{Path, PathBuf};

use symlife_core::{default_eps_sym, detect_symmetry_group, generate};

use crate::formats::{parse_json, read_to_string, write_file, GenSpecFile, NetworkFile};
use crate::report::group_line;
use crate::{logging, CliResult};

use super::out_file;

pub fn run(genspec: &Path, seed: Option<u64>, out: &Option<PathBuf>) -> CliResult<()> {
    let text = read_to_string(genspec)?;
    let spec_file: GenSpecFile = parse_json(genspec, &text)?;
    let spec = spec_file.to_spec(seed)?;
    let instance = generate(&spec)?;

    // round-trip self-check: the designed group must be present
    let group = detect_symmetry_group(&instance, default_eps_sym(&instance));
    let designed = spec.kind.designed_order();
    if group.order() % designed != 0 {
        logging::info(format!(
            "detected order {} is not a multiple of the designed order {designed}",
            group.order()
        ));
    }

    let network = NetworkFile::from_instance(&instance);
    let mut json = serde_json::to_string_pretty(&network).expect("network serializes");
    json.push('\n');
    let path = out_file(out, genspec, ".network.json");
    write_file(&path, &json)?;

    println!("network: {}", path.display());
    println!("nodes: {} collectors, {} sensors", instance.k(), instance.n());
    println!("group: {}", group_line(&group));
    Ok(())
}
