//! Library side of the simulation CLI: experiment runners, IQ file I/O, and
//! bit/hex helpers shared between the binary and its tests.

pub mod experiments;
pub mod iq;

/// Packs bits (MSB first per byte) into lowercase hex; a partial final byte
/// is zero-padded on the right.
pub fn bits_to_hex(bits: &[bool]) -> String {
    bits.chunks(8)
        .map(|chunk| {
            let mut byte = 0u8;
            for i in 0..8 {
                byte <<= 1;
                if *chunk.get(i).unwrap_or(&false) {
                    byte |= 1;
                }
            }
            format!("{byte:02x}")
        })
        .collect()
}

/// Expands a hex string into bits, MSB first per byte.
pub fn hex_to_bits(hex: &str) -> Result<Vec<bool>, String> {
    let clean: String = hex.chars().filter(|c| !c.is_whitespace()).collect();
    if !clean.len().is_multiple_of(2) {
        return Err("hex payload must have an even number of digits".into());
    }
    let mut bits = Vec::with_capacity(clean.len() * 4);
    for i in (0..clean.len()).step_by(2) {
        let byte = u8::from_str_radix(&clean[i..i + 2], 16)
            .map_err(|e| format!("bad hex byte {:?}: {e}", &clean[i..i + 2]))?;
        for b in (0..8).rev() {
            bits.push((byte >> b) & 1 == 1);
        }
    }
    Ok(bits)
}
