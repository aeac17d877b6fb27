#![no_main]
use libfuzzer_sys::fuzz_target;
use semihom_cli::instance::InstanceFile;

fuzz_target!(|data: &str| {
    if let Ok(file) = InstanceFile::parse(data) {
        let again = InstanceFile::parse(&file.to_json()).expect("serialized instance parses");
        assert_eq!(again, file);
    }
});
