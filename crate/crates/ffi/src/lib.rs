//! C ABI over `bifix-iet`.
//!
//! Objects cross the boundary as opaque handles ([`BifixIet`],
//! [`BifixLanguage`], [`BifixCode`]) created by `*_new`/`*_from_*`
//! functions and released by the matching `*_free`. Exact numbers and
//! words travel as NUL-terminated UTF-8 strings in the library's text
//! forms; strings returned through `out` parameters are owned by the
//! caller and released with [`bifix_string_free`].
//!
//! Every fallible function returns a [`BifixStatus`]. On failure the
//! message is kept per thread and read with [`bifix_last_error`]. Output
//! parameters are written only on success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bifix_iet::bifix::{build_tf, decode_word, enumerate_maximal_bifix, CodeKind, CodeSet, CodingMorphism};
use bifix_iet::symbolic::{invariant_measure, language_of_iet};
use bifix_iet::{Alphabet, Error, FactorialLanguage, Iet, QuadraticNumber};

/// Result codes shared by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BifixStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed number, word, file or code.
    Parse = 3,
    /// Well-formed input outside the operation's domain.
    Domain = 4,
    /// A connection was found where regularity is required.
    NotRegular = 5,
    /// A truncated language is too short for the request.
    Truncation = 6,
    Io = 7,
    /// A bug inside the library; the message says where.
    Panic = 8,
}

/// Outcome of a connection search: `found` is 0 or 1 and, when 1,
/// `T^k(mu_i) = mu_j` with indices from 1.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BifixConnection {
    pub found: u8,
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

pub struct BifixIet {
    inner: Iet,
}

pub struct BifixLanguage {
    inner: FactorialLanguage,
}

/// A coding morphism together with the alphabet its images are written in.
pub struct BifixCode {
    morphism: CodingMorphism,
    target: Alphabet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BifixStatus {
    match e {
        Error::NumberSyntax(_) | Error::Format(_) | Error::UnknownSymbol(_) | Error::InvalidSubstitution(_) => {
            BifixStatus::Parse
        }
        Error::NotRegularToDepth { .. } => BifixStatus::NotRegular,
        Error::TruncationTooShort { .. } => BifixStatus::Truncation,
        Error::Io(_) => BifixStatus::Io,
        _ => BifixStatus::Domain,
    }
}

/// Runs `f`, turning errors and panics into a status plus message.
fn guard(f: impl FnOnce() -> Result<(), (BifixStatus, String)>) -> BifixStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BifixStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            BifixStatus::Panic
        }
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, (BifixStatus, String)>;
}

impl<T> OrStatus<T> for Result<T, Error> {
    fn or_status(self) -> Result<T, (BifixStatus, String)> {
        self.map_err(|e| (status_of(&e), e.to_string()))
    }
}

fn null(what: &str) -> (BifixStatus, String) {
    (BifixStatus::NullArgument, format!("`{what}` is null"))
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn arg_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (BifixStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (BifixStatus::InvalidUtf8, format!("`{what}`: {e}")))
}

/// # Safety
/// `p` must be null or point to a live handle.
unsafe fn arg_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (BifixStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

fn check_out<T>(out: *mut T, what: &str) -> Result<(), (BifixStatus, String)> {
    if out.is_null() {
        Err(null(what))
    } else {
        Ok(())
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior NUL").into_raw()
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn bifix_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn bifix_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn bifix_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an exchange from its JSON file form.
///
/// # Safety
/// `json` must be a valid string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bifix_iet_from_json(json: *const c_char, out: *mut *mut BifixIet) -> BifixStatus {
    guard(|| {
        let json = arg_str(json, "json")?;
        check_out(out, "out")?;
        let inner = Iet::from_json(json).or_status()?;
        *out = Box::into_raw(Box::new(BifixIet { inner }));
        Ok(())
    })
}

/// Serializes an exchange to its JSON file form.
///
/// # Safety
/// `iet` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bifix_iet_to_json(iet: *const BifixIet, out: *mut *mut c_char) -> BifixStatus {
    guard(|| {
        let iet = arg_ref(iet, "iet")?;
        check_out(out, "out")?;
        *out = into_c_string(iet.inner.to_json());
        Ok(())
    })
}

/// # Safety
/// `iet` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bifix_iet_free(iet: *mut BifixIet) {
    if !iet.is_null() {
        drop(Box::from_raw(iet));
    }
}

/// Number of letters.
///
/// # Safety
/// `iet` must be null or a live handle; null gives 0.
#[no_mangle]
pub unsafe extern "C" fn bifix_iet_letter_count(iet: *const BifixIet) -> usize {
    iet.as_ref().map_or(0, |t| t.inner.letter_count())
}

/// `T(z)` for `z` in the text form, e.g. `3/2-1/2*sqrt(5)`.
///
/// # Safety
/// `iet` must be a live handle, `z` a valid string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bifix_iet_apply(iet: *const BifixIet, z: *const c_char, out: *mut *mut c_char) -> BifixStatus {
    guard(|| {
        let iet = arg_ref(iet, "iet")?;
        let z: QuadraticNumber = arg_str(z, "z")?.parse().or_status()?;
        check_out(out, "out")?;
        let image = iet.inner.apply(&z).or_status()?;
        *out = into_c_string(image.to_string());
        Ok(())
    })
}

/// Bounded connection search to `depth` steps.
///
/// # Safety
/// `iet` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bifix_iet_check_regular(
    iet: *const BifixIet,
    depth: usize,
    out: *mut BifixConnection,
) -> BifixStatus {
    guard(|| {
        let iet = arg_ref(iet, "iet")?;
        check_out(out, "out")?;
        let report = iet.inner.check_regular(depth);
        *out = match report.witness {
            Some(c) => BifixConnection { found: 1, i: c.i, j: c.j, k: c.k },
            None => BifixConnection::default(),
        };
        Ok(())
    })
}

/// `T^n` as a new exchange.
///
/// # Safety
/// `iet` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bifix_iet_power(iet: *const BifixIet, n: usize, out: *mut *mut BifixIet) -> BifixStatus {
    guard(|| {
        let iet = arg_ref(iet, "iet")?;
        check_out(out, "out")?;
        let inner = iet.inner.power(n).or_status()?;
        *out = Box::into_raw(Box::new(BifixIet { inner }));
        Ok(())
    })
}

/// Exact measure of the cylinder of `word`, in the text form.
///
/// # Safety
/// `iet` must be a live handle, `word` a valid string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bifix_iet_measure(
    iet: *const BifixIet,
    word: *const c_char,
    out: *mut *mut c_char,
) -> BifixStatus {
    guard(|| {
        let iet = arg_ref(iet, "iet")?;
        let w = iet.inner.alphabet().parse_word(arg_str(word, "word")?).or_status()?;
        check_out(out, "out")?;
        *out = into_c_string(invariant_measure(&iet.inner, &w).to_string());
        Ok(())
    })
}

/// Factors of length at most `max_len`; fails with `NotRegular` on a
/// connection within `max_len` steps.
///
/// # Safety
/// `iet` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bifix_language_from_iet(
    iet: *const BifixIet,
    max_len: usize,
    out: *mut *mut BifixLanguage,
) -> BifixStatus {
    guard(|| {
        let iet = arg_ref(iet, "iet")?;
        check_out(out, "out")?;
        let inner = language_of_iet(&iet.inner, max_len).or_status()?;
        *out = Box::into_raw(Box::new(BifixLanguage { inner }));
        Ok(())
    })
}

/// Parses the plain-text language file form.
///
/// # Safety
/// `text` must be a valid string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bifix_language_from_text(text: *const c_char, out: *mut *mut BifixLanguage) -> BifixStatus {
    guard(|| {
        let text = arg_str(text, "text")?;
        check_out(out, "out")?;
        let inner = FactorialLanguage::from_text(text).or_status()?;
        *out = Box::into_raw(Box::new(BifixLanguage { inner }));
        Ok(())
    })
}

/// # Safety
/// `lang` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bifix_language_to_text(lang: *const BifixLanguage, out: *mut *mut c_char) -> BifixStatus {
    guard(|| {
        let lang = arg_ref(lang, "lang")?;
        check_out(out, "out")?;
        *out = into_c_string(lang.inner.to_text().or_status()?);
        Ok(())
    })
}

/// Number of words of length `n`; 0 for a null handle.
///
/// # Safety
/// `lang` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bifix_language_count(lang: *const BifixLanguage, n: usize) -> usize {
    lang.as_ref().map_or(0, |l| l.inner.count_of_length(n))
}

/// Writes 1 to `out` if `word` belongs to the language, else 0.
///
/// # Safety
/// `lang` must be a live handle, `word` a valid string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bifix_language_contains(
    lang: *const BifixLanguage,
    word: *const c_char,
    out: *mut u8,
) -> BifixStatus {
    guard(|| {
        let lang = arg_ref(lang, "lang")?;
        let w = lang.inner.alphabet().parse_word(arg_str(word, "word")?).or_status()?;
        check_out(out, "out")?;
        *out = u8::from(lang.inner.contains(&w));
        Ok(())
    })
}

/// # Safety
/// `lang` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bifix_language_free(lang: *mut BifixLanguage) {
    if !lang.is_null() {
        drop(Box::from_raw(lang));
    }
}

/// Maximal bifix codes of S-degree `degree` with words of length at most
/// `max_word_len`, as a JSON array of arrays of words.
///
/// # Safety
/// `lang` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bifix_enumerate(
    lang: *const BifixLanguage,
    degree: usize,
    max_word_len: usize,
    out: *mut *mut c_char,
) -> BifixStatus {
    guard(|| {
        let lang = arg_ref(lang, "lang")?;
        check_out(out, "out")?;
        let codes = enumerate_maximal_bifix(&lang.inner, degree, max_word_len).or_status()?;
        let a = lang.inner.alphabet();
        let listed: Vec<Vec<String>> = codes.iter().map(|c| c.words().map(|w| a.format_word(w)).collect()).collect();
        *out = into_c_string(serde_json::to_string(&listed).expect("serializable"));
        Ok(())
    })
}

/// A coding morphism for the words in `words` (comma or space separated)
/// over the alphabet of `iet`; source letters are named `u, v, w, ...`
/// in lexicographic order of the words.
///
/// # Safety
/// `iet` must be a live handle, `words` a valid string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bifix_code_new(
    iet: *const BifixIet,
    words: *const c_char,
    out: *mut *mut BifixCode,
) -> BifixStatus {
    guard(|| {
        let iet = arg_ref(iet, "iet")?;
        let target = iet.inner.alphabet().clone();
        let x = CodeSet::parse(&target, arg_str(words, "words")?, CodeKind::Any).or_status()?;
        check_out(out, "out")?;
        *out = Box::into_raw(Box::new(BifixCode { morphism: CodingMorphism::from_code(&x), target }));
        Ok(())
    })
}

/// # Safety
/// `code` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bifix_code_free(code: *mut BifixCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Greedy decoding of `word`; writes the decoded symbols and the
/// undecoded remainder (possibly empty).
///
/// # Safety
/// `code` must be a live handle, `word` a valid string, and both outputs
/// valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bifix_decode_word(
    code: *const BifixCode,
    word: *const c_char,
    out_symbols: *mut *mut c_char,
    out_remainder: *mut *mut c_char,
) -> BifixStatus {
    guard(|| {
        let code = arg_ref(code, "code")?;
        let w = code.target.parse_word(arg_str(word, "word")?).or_status()?;
        check_out(out_symbols, "out_symbols")?;
        check_out(out_remainder, "out_remainder")?;
        let d = decode_word(&w, &code.morphism).or_status()?;
        *out_symbols = into_c_string(code.morphism.source().format_word(&d.symbols));
        *out_remainder = into_c_string(code.target.format_word(&d.remainder));
        Ok(())
    })
}

/// The decoded exchange `T_f` for a maximal bifix code of the language
/// of `iet`.
///
/// # Safety
/// `iet` and `code` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bifix_build_tf(
    iet: *const BifixIet,
    code: *const BifixCode,
    out: *mut *mut BifixIet,
) -> BifixStatus {
    guard(|| {
        let iet = arg_ref(iet, "iet")?;
        let code = arg_ref(code, "code")?;
        check_out(out, "out")?;
        let len = code.morphism.max_image_len();
        let s = language_of_iet(&iet.inner, len).or_status()?;
        let inner = build_tf(&iet.inner, &code.morphism, &s).or_status()?;
        *out = Box::into_raw(Box::new(BifixIet { inner }));
        Ok(())
    })
}
