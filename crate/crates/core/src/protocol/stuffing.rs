//! Wire-level framing of an input stream, as a standalone pure function.
//!
//! `stuff_transform` renders the slot symbols (false = silent, true = qubit
//! transmission) a sender with gap cap `max_zeros` produces for a given input
//! string. It mirrors the sender state machine bit for bit and exists as an
//! independent route for checking it: rounds have the wire shape
//! `0^k1 1 0^k2 1` with `k2 <= max_zeros`, payload bits are consumed from the
//! input but never appear on the wire, and a round whose payload the input
//! cannot supply is dropped after its first qubit.

/// Wire symbols produced for `input` under gap cap `max_zeros`.
pub fn stuff_transform(input: &[bool], max_zeros: u32) -> Vec<bool> {
    let mut wire = Vec::with_capacity(input.len());
    let mut i = 0usize;
    loop {
        // Leading zeros transmit as silence.
        while i < input.len() && !input[i] {
            wire.push(false);
            i += 1;
        }
        if i >= input.len() {
            return wire;
        }
        // The round-opening "1": generate the pair, send the first qubit.
        i += 1;
        wire.push(true);
        let mut gap = 0u32;
        loop {
            if gap == max_zeros {
                // Cap reached: stuff a "1" that consumes no input bit, then
                // take the payload. Stuffing happens even when the next input
                // bit is a genuine "1"; that bit flows into the payload.
                if i + 1 < input.len() {
                    wire.push(true);
                    i += 2;
                } else {
                    return wire;
                }
                break;
            }
            match input.get(i) {
                None => return wire,
                Some(false) => {
                    wire.push(false);
                    gap += 1;
                    i += 1;
                }
                Some(true) => {
                    // Data "1" closes the round; two payload bits follow.
                    i += 1;
                    if i + 1 < input.len() {
                        wire.push(true);
                        i += 2;
                    } else {
                        return wire;
                    }
                    break;
                }
            }
        }
    }
}
