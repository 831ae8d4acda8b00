//! Print the R3 pattern table derived from planar line arrangements.

fn main() {
    let table = vslink::oracle::planar::derive_r3_table();
    print!("{}", vslink::oracle::planar::render_table(&table));
}
