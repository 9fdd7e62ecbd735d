//! Assemble a CRC-protected frame, encode it, and demonstrate the two
//! defining properties of the polar transform: it is linear and its own
//! inverse.
//!
//! ```text
//! cargo run --release --example encode_roundtrip
//! ```

use polarsim::{encode, ga_construct, CrcSpec, MessageFrame, Result};

fn bits(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}

fn show(label: &str, v: &[u8]) {
    let s: String = v.iter().map(|&b| char::from(b'0' + b)).collect();
    println!("  {label:<12} {s}");
}

fn main() -> Result<()> {
    let code = ga_construct(32, 16, 2.0, 0.5)?;
    let crc = CrcSpec::new(4, 0x3)?; // CRC-4-ITU, x^4 + x + 1

    // 12 information bits + 4 CRC bits fill the 16 non-frozen positions.
    let frame = MessageFrame::assemble(&bits("110100101100"), &crc, &code)?;
    println!("PC(32,16) with CRC-4 0x3:");
    show("info", &frame.info_bits);
    show("crc", &frame.crc_bits);
    show("u", &frame.u_vector);

    let x = encode(&frame.u_vector)?;
    show("codeword", &x);

    // Involution: encoding the codeword recovers the input vector.
    assert_eq!(encode(&x)?, frame.u_vector);
    println!("  encode(encode(u)) == u");

    // Linearity over GF(2): the code of a sum is the sum of the codes.
    let other = MessageFrame::assemble(&bits("000111010011"), &crc, &code)?;
    let sum: Vec<u8> = frame
        .u_vector
        .iter()
        .zip(&other.u_vector)
        .map(|(a, b)| a ^ b)
        .collect();
    let xor_of_codes: Vec<u8> = x
        .iter()
        .zip(&encode(&other.u_vector)?)
        .map(|(a, b)| a ^ b)
        .collect();
    assert_eq!(encode(&sum)?, xor_of_codes);
    println!("  encode(u ⊕ v) == encode(u) ⊕ encode(v)");

    // The CRC catches any single-bit corruption of the payload.
    let mut corrupted = [frame.info_bits.as_slice(), frame.crc_bits.as_slice()].concat();
    corrupted[5] ^= 1;
    assert!(!polarsim::crc_check(&corrupted, &crc)?);
    println!("  single-bit corruption fails the CRC, as it must");
    Ok(())
}
