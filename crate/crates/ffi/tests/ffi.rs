use std::ffi::CStr;
use std::process::Command;
use std::ptr;

use twalg_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(tw_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn decomposition_round_trip() {
    unsafe {
        let mut ops = ptr::null_mut();
        assert_eq!(tw_operators_new(4, &mut ops), TwStatus::Ok);
        let mut n = 0;
        assert_eq!(tw_operators_size(ops, &mut n), TwStatus::Ok);
        assert_eq!(n, 81);

        let mut dec = ptr::null_mut();
        assert_eq!(tw_decompose(ops, &mut dec), TwStatus::Ok);
        let mut count = 0;
        assert_eq!(tw_decomposition_block_count(dec, &mut count), TwStatus::Ok);
        assert_eq!(count, 4);
        let mut block = TwBlock::default();
        assert_eq!(tw_decomposition_block(dec, 1, &mut block), TwStatus::Ok);
        assert_eq!(
            block,
            TwBlock { r: 3, s: 1, t: 0, m1: 2, m2: 1, dim: 15, mult: 3 }
        );
        assert_eq!(tw_decomposition_block(dec, 4, &mut block), TwStatus::OutOfRange);
        assert!(last_error().contains("block 4"));
        let mut total = 0;
        assert_eq!(tw_decomposition_total(dec, &mut total), TwStatus::Ok);
        assert_eq!(total, 81);

        tw_decomposition_free(dec);
        tw_operators_free(ops);
    }
}

#[test]
fn relation_counts() {
    unsafe {
        let mut ops = ptr::null_mut();
        assert_eq!(tw_operators_new(3, &mut ops), TwStatus::Ok);
        let (mut total, mut passed) = (0, 0);
        assert_eq!(tw_relations_check(ops, &mut total, &mut passed), TwStatus::Ok);
        assert_eq!((total, passed), (27, 27));
        tw_operators_free(ops);
    }
}

#[test]
fn free_functions() {
    unsafe {
        let mut v = 0u64;
        assert_eq!(tw_shell_size(4, 1, 1, &mut v), TwStatus::Ok);
        assert_eq!(v, 12);
        assert_eq!(tw_dim_formula(3, 1, &mut v), TwStatus::Ok);
        assert_eq!(v, 24);
        assert_eq!(tw_wedderburn_total(3, &mut v), TwStatus::Ok);
        assert_eq!(v, 165);
        let mut dim = 0usize;
        assert_eq!(tw_terwilliger_dim(2, &mut dim), TwStatus::Ok);
        assert_eq!(dim, 45);
        assert!(!CStr::from_ptr(tw_version()).to_bytes().is_empty());
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut ops = ptr::null_mut();
        assert_eq!(tw_operators_new(0, &mut ops), TwStatus::Domain);
        assert!(ops.is_null());
        assert!(last_error().contains("d >= 1"));
        assert_eq!(tw_operators_new(12, &mut ops), TwStatus::Resource);
        assert_eq!(tw_operators_new(2, ptr::null_mut()), TwStatus::NullPointer);
        let mut v = 0u64;
        assert_eq!(tw_dim_formula(-1, 0, &mut v), TwStatus::Domain);
        assert_eq!(tw_shell_size(2, 2, 1, &mut v), TwStatus::Domain);
        assert_eq!(tw_shell_size(2, 1, 1, ptr::null_mut()), TwStatus::NullPointer);
        let mut dim = 0usize;
        assert_eq!(tw_terwilliger_dim(9, &mut dim), TwStatus::Resource);
        assert_eq!(tw_decomposition_block_count(ptr::null(), &mut dim), TwStatus::NullPointer);
        tw_operators_free(ptr::null_mut());
        tw_decomposition_free(ptr::null_mut());
        assert_eq!(tw_dim_formula(0, 0, &mut v), TwStatus::Ok);
        assert_eq!(last_error(), "");
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/twalg.h");
    let text = std::fs::read_to_string(header).expect("header generated by build script");
    for name in ["tw_operators_new", "tw_decompose", "tw_decomposition_block", "tw_last_error_message", "TW_STATUS_RESOURCE"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let dir = std::env::temp_dir().join(format!("twalg-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        "#include \"twalg.h\"\n\
         int use(void) {\n\
           TwOperators *ops = 0; TwBlock b;\n\
           if (tw_operators_new(3, &ops) != TW_STATUS_OK) return 1;\n\
           (void)b; tw_operators_free(ops); return 0;\n\
         }\n",
    )
    .unwrap();
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    match Command::new("cc").args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I", include]).arg(&src).output() {
        Ok(out) => assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr)),
        Err(_) => eprintln!("no C compiler found; header syntax not checked"),
    }
    let _ = std::fs::remove_dir_all(dir);
}
