#![no_main]
use libfuzzer_sys::fuzz_target;
use semihom_cli::instance::InstanceFile;
use semihom_cli::render;

// keeps exact arithmetic on fuzzed input fast
const MAX_G: usize = 3;
const MAX_TEXT: usize = 4096;

fuzz_target!(|data: &str| {
    if data.len() > MAX_TEXT {
        return;
    }
    let Ok(file) = InstanceFile::parse(data) else { return };
    if file.tori.iter().any(|t| t.g > MAX_G) {
        return;
    }
    let (model, _) = file.build();
    for name in model.tori.keys().chain(model.classes.keys()).chain(model.bundles.keys()) {
        let object = model.get(name).expect("validated object");
        if let Ok(doc) = render::object_doc(name, object) {
            let _ = render::human(&doc);
            let back: render::ReportDoc = serde_json::from_str(&render::machine(&doc)).expect("report parses");
            assert_eq!(back, doc);
        }
        let _ = render::gn_doc(name, object, 1);
    }
});
