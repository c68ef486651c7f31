//! C ABI over the core engine: opaque handles, status codes, and
//! caller-freed strings. The header is generated into `include/ggt.h`
//! at build time.
//!
//! Ownership rules: every `*_new`/`*_parse`/out-parameter object is
//! owned by the caller and released with the matching `*_free`; strings
//! returned by `ggt_*_print` are released with `ggt_string_free`.
//! Passing null where a non-null handle is expected yields
//! `GGT_STATUS_NULL_POINTER` and leaves out-parameters untouched.

use std::ffi::{c_char, CStr, CString};
use std::str::FromStr;

use ggt_core::fox_magnus::{derived_depth, derived_member, Depth, DerivedLevel};
use ggt_core::free_groups::{SubgroupAutomaton, Word};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GgtStatus {
    GgtStatusOk = 0,
    GgtStatusNullPointer = 1,
    GgtStatusParseError = 2,
    GgtStatusInvalidArgument = 3,
    GgtStatusUtf8Error = 4,
}

use GgtStatus::*;

/// Opaque freely reduced word handle.
pub struct GgtWord {
    inner: Word,
}

/// Opaque folded subgroup automaton handle.
pub struct GgtAutomaton {
    inner: SubgroupAutomaton,
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, GgtStatus> {
    if text.is_null() {
        return Err(GgtStatusNullPointer);
    }
    unsafe { CStr::from_ptr(text) }.to_str().map_err(|_| GgtStatusUtf8Error)
}

fn give_word(out: *mut *mut GgtWord, word: Word) -> GgtStatus {
    if out.is_null() {
        return GgtStatusNullPointer;
    }
    unsafe { *out = Box::into_raw(Box::new(GgtWord { inner: word })) };
    GgtStatusOk
}

unsafe fn borrow<'a, T>(handle: *const T) -> Result<&'a T, GgtStatus> {
    unsafe { handle.as_ref() }.ok_or(GgtStatusNullPointer)
}

/// Parses a word in the `x<k>`/`X<k>` token syntax (optionally with
/// `^<int>` powers); the empty string is the identity.
#[no_mangle]
pub unsafe extern "C" fn ggt_word_parse(
    text: *const c_char,
    out: *mut *mut GgtWord,
) -> GgtStatus {
    let text = match unsafe { read_str(text) } {
        Ok(t) => t,
        Err(status) => return status,
    };
    match Word::from_str(text) {
        Ok(word) => give_word(out, word),
        Err(_) => GgtStatusParseError,
    }
}

/// Releases a word handle; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn ggt_word_free(word: *mut GgtWord) {
    if !word.is_null() {
        drop(unsafe { Box::from_raw(word) });
    }
}

/// Canonical text form; release with `ggt_string_free`. Null on null
/// input.
#[no_mangle]
pub unsafe extern "C" fn ggt_word_print(word: *const GgtWord) -> *mut c_char {
    match unsafe { borrow(word) } {
        Ok(w) => CString::new(w.inner.to_string())
            .expect("no interior NUL in word syntax")
            .into_raw(),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Releases a string returned by this library; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn ggt_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}

/// `out = left · right`, freely reduced.
#[no_mangle]
pub unsafe extern "C" fn ggt_word_multiply(
    left: *const GgtWord,
    right: *const GgtWord,
    out: *mut *mut GgtWord,
) -> GgtStatus {
    match (unsafe { borrow(left) }, unsafe { borrow(right) }) {
        (Ok(l), Ok(r)) => give_word(out, l.inner.multiply(&r.inner)),
        (Err(s), _) | (_, Err(s)) => s,
    }
}

/// `out = word⁻¹`.
#[no_mangle]
pub unsafe extern "C" fn ggt_word_invert(
    word: *const GgtWord,
    out: *mut *mut GgtWord,
) -> GgtStatus {
    match unsafe { borrow(word) } {
        Ok(w) => give_word(out, w.inner.invert()),
        Err(s) => s,
    }
}

/// `out = word^exponent` (negative exponents invert).
#[no_mangle]
pub unsafe extern "C" fn ggt_word_power(
    word: *const GgtWord,
    exponent: i64,
    out: *mut *mut GgtWord,
) -> GgtStatus {
    match unsafe { borrow(word) } {
        Ok(w) => give_word(out, w.inner.power(exponent)),
        Err(s) => s,
    }
}

/// Reduced length in letters.
#[no_mangle]
pub unsafe extern "C" fn ggt_word_length(
    word: *const GgtWord,
    out: *mut u64,
) -> GgtStatus {
    match unsafe { borrow(word) } {
        Ok(w) if !out.is_null() => {
            unsafe { *out = w.inner.len() as u64 };
            GgtStatusOk
        }
        Ok(_) => GgtStatusNullPointer,
        Err(s) => s,
    }
}

/// Membership in the level-`level` derived subgroup of the ambient free
/// group.
#[no_mangle]
pub unsafe extern "C" fn ggt_derived_member(
    word: *const GgtWord,
    level: u32,
    out: *mut bool,
) -> GgtStatus {
    match unsafe { borrow(word) } {
        Ok(w) if !out.is_null() => {
            unsafe { *out = derived_member(&w.inner, DerivedLevel(level)) };
            GgtStatusOk
        }
        Ok(_) => GgtStatusNullPointer,
        Err(s) => s,
    }
}

/// Derived-series depth capped at `max`: writes the depth and whether
/// it is exact (false means "at least `max`").
#[no_mangle]
pub unsafe extern "C" fn ggt_derived_depth(
    word: *const GgtWord,
    max: u32,
    out_depth: *mut u32,
    out_exact: *mut bool,
) -> GgtStatus {
    match unsafe { borrow(word) } {
        Ok(w) if !out_depth.is_null() && !out_exact.is_null() => {
            let (depth, exact) = match derived_depth(&w.inner, max) {
                Depth::Exactly(n) => (n, true),
                Depth::AtLeast(n) => (n, false),
            };
            unsafe {
                *out_depth = depth;
                *out_exact = exact;
            }
            GgtStatusOk
        }
        Ok(_) => GgtStatusNullPointer,
        Err(s) => s,
    }
}

/// Folds the subgroup generated by `count` generator words (parsed from
/// C strings) into a membership automaton.
#[no_mangle]
pub unsafe extern "C" fn ggt_automaton_fold(
    generators: *const *const c_char,
    count: usize,
    out: *mut *mut GgtAutomaton,
) -> GgtStatus {
    if (generators.is_null() && count > 0) || out.is_null() {
        return GgtStatusNullPointer;
    }
    let mut words = Vec::with_capacity(count);
    for i in 0..count {
        let text = match unsafe { read_str(*generators.add(i)) } {
            Ok(t) => t,
            Err(status) => return status,
        };
        match Word::from_str(text) {
            Ok(w) => words.push(w),
            Err(_) => return GgtStatusParseError,
        }
    }
    let automaton = SubgroupAutomaton::fold(&words);
    unsafe { *out = Box::into_raw(Box::new(GgtAutomaton { inner: automaton })) };
    GgtStatusOk
}

/// Releases an automaton handle; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn ggt_automaton_free(automaton: *mut GgtAutomaton) {
    if !automaton.is_null() {
        drop(unsafe { Box::from_raw(automaton) });
    }
}

/// Subgroup membership of a word.
#[no_mangle]
pub unsafe extern "C" fn ggt_automaton_contains(
    automaton: *const GgtAutomaton,
    word: *const GgtWord,
    out: *mut bool,
) -> GgtStatus {
    match (unsafe { borrow(automaton) }, unsafe { borrow(word) }) {
        (Ok(a), Ok(w)) if !out.is_null() => {
            unsafe { *out = a.inner.contains(&w.inner) };
            GgtStatusOk
        }
        (Ok(_), Ok(_)) => GgtStatusNullPointer,
        (Err(s), _) | (_, Err(s)) => s,
    }
}

/// Shortlex-minimal representative of the right coset of `word`.
#[no_mangle]
pub unsafe extern "C" fn ggt_automaton_coset_rep(
    automaton: *const GgtAutomaton,
    word: *const GgtWord,
    out: *mut *mut GgtWord,
) -> GgtStatus {
    match (unsafe { borrow(automaton) }, unsafe { borrow(word) }) {
        (Ok(a), Ok(w)) => give_word(out, a.inner.coset_rep(&w.inner)),
        (Err(s), _) | (_, Err(s)) => s,
    }
}

/// Rank of the subgroup (free by Nielsen–Schreier).
#[no_mangle]
pub unsafe extern "C" fn ggt_automaton_rank(
    automaton: *const GgtAutomaton,
    out: *mut u64,
) -> GgtStatus {
    match unsafe { borrow(automaton) } {
        Ok(a) if !out.is_null() => {
            unsafe { *out = a.inner.rank() as u64 };
            GgtStatusOk
        }
        Ok(_) => GgtStatusNullPointer,
        Err(s) => s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn parse(text: &str) -> *mut GgtWord {
        let c = CString::new(text).unwrap();
        let mut out = ptr::null_mut();
        let status = unsafe { ggt_word_parse(c.as_ptr(), &mut out) };
        assert_eq!(status, GgtStatusOk);
        out
    }

    fn print(word: *const GgtWord) -> String {
        let s = unsafe { ggt_word_print(word) };
        let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
        unsafe { ggt_string_free(s) };
        text
    }

    #[test]
    fn word_round_trip_and_arithmetic() {
        let w = parse("x1 x2^-1 x2 X1 x2");
        assert_eq!(print(w), "x2");
        let v = parse("X2 x3");
        let mut product = ptr::null_mut();
        assert_eq!(unsafe { ggt_word_multiply(w, v, &mut product) }, GgtStatusOk);
        assert_eq!(print(product), "x3");
        let mut inv = ptr::null_mut();
        assert_eq!(unsafe { ggt_word_invert(product, &mut inv) }, GgtStatusOk);
        assert_eq!(print(inv), "X3");
        let mut cube = ptr::null_mut();
        assert_eq!(unsafe { ggt_word_power(w, -3, &mut cube) }, GgtStatusOk);
        assert_eq!(print(cube), "X2 X2 X2");
        let mut len = 0u64;
        assert_eq!(unsafe { ggt_word_length(cube, &mut len) }, GgtStatusOk);
        assert_eq!(len, 3);
        for p in [w, v, product, inv, cube] {
            unsafe { ggt_word_free(p) };
        }
    }

    #[test]
    fn error_paths() {
        let mut out = ptr::null_mut();
        let bad = CString::new("x0").unwrap();
        assert_eq!(
            unsafe { ggt_word_parse(bad.as_ptr(), &mut out) },
            GgtStatusParseError
        );
        assert_eq!(
            unsafe { ggt_word_parse(ptr::null(), &mut out) },
            GgtStatusNullPointer
        );
        assert_eq!(
            unsafe { ggt_word_multiply(ptr::null(), ptr::null(), &mut out) },
            GgtStatusNullPointer
        );
        assert!(unsafe { ggt_word_print(ptr::null()) }.is_null());
        unsafe { ggt_word_free(ptr::null_mut()) };
        unsafe { ggt_string_free(ptr::null_mut()) };
    }

    #[test]
    fn derived_queries() {
        let c = parse("X1 X2 x1 x2");
        let mut member = false;
        assert_eq!(unsafe { ggt_derived_member(c, 1, &mut member) }, GgtStatusOk);
        assert!(member);
        assert_eq!(unsafe { ggt_derived_member(c, 2, &mut member) }, GgtStatusOk);
        assert!(!member);
        let mut depth = 99;
        let mut exact = false;
        assert_eq!(
            unsafe { ggt_derived_depth(c, 4, &mut depth, &mut exact) },
            GgtStatusOk
        );
        assert_eq!((depth, exact), (1, true));
        let identity = parse("");
        assert_eq!(
            unsafe { ggt_derived_depth(identity, 4, &mut depth, &mut exact) },
            GgtStatusOk
        );
        assert_eq!((depth, exact), (4, false));
        unsafe { ggt_word_free(c) };
        unsafe { ggt_word_free(identity) };
    }

    #[test]
    fn automaton_queries() {
        let g1 = CString::new("x1 x1").unwrap();
        let g2 = CString::new("x2").unwrap();
        let gens = [g1.as_ptr(), g2.as_ptr()];
        let mut automaton = ptr::null_mut();
        assert_eq!(
            unsafe { ggt_automaton_fold(gens.as_ptr(), gens.len(), &mut automaton) },
            GgtStatusOk
        );
        let mut rank = 0u64;
        assert_eq!(unsafe { ggt_automaton_rank(automaton, &mut rank) }, GgtStatusOk);
        assert_eq!(rank, 2);

        let inside = parse("x1 x1 x2");
        let outside = parse("x1");
        let mut contained = false;
        assert_eq!(
            unsafe { ggt_automaton_contains(automaton, inside, &mut contained) },
            GgtStatusOk
        );
        assert!(contained);
        assert_eq!(
            unsafe { ggt_automaton_contains(automaton, outside, &mut contained) },
            GgtStatusOk
        );
        assert!(!contained);

        let mut rep = ptr::null_mut();
        assert_eq!(
            unsafe { ggt_automaton_coset_rep(automaton, inside, &mut rep) },
            GgtStatusOk
        );
        assert_eq!(print(rep), "");
        unsafe {
            ggt_word_free(inside);
            ggt_word_free(outside);
            ggt_word_free(rep);
            ggt_automaton_free(automaton);
        }
    }
}
