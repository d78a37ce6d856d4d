//! Canonical JSON round trip and CSV plot data.

use qspectra::io::{load_matrix, save, spectrum_csv, to_canonical_string};
use qspectra::linalg::s_spectrum;
use qspectra::random::{random_matrix, seeded};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = random_matrix(3, &mut seeded(2));
    let path = std::env::temp_dir().join("qspectra-example.json");
    save(&a, &path)?;
    let b = load_matrix(&path)?;
    assert_eq!(a, b);
    assert_eq!(to_canonical_string(&a), to_canonical_string(&b));
    println!("{}", std::fs::read_to_string(&path)?.trim_end());
    print!("{}", spectrum_csv(&s_spectrum(&b)?));
    std::fs::remove_file(path)?;
    Ok(())
}
