//! The O(log N / log log N) rgTAS square (base-b counter, shifter, pads).

// implemented after the prgTAS generator is verified
