//! Serialize an accepting run to JSON, read it back and replay it.
use arcadian::engine::prove;
use arcadian::formula::parse;
use arcadian::machine::{Budget, RunJson, RunTree};

fn main() {
    let a = prove(&parse("p /\\ q -> q /\\ p").unwrap(), Budget::new(24, 0)).unwrap();
    let aut = a.automaton();
    let run = a.result.run().unwrap();
    let text = serde_json::to_string_pretty(&run.to_json(aut)).unwrap();
    println!("{} bytes of JSON, {} IDs", text.len(), run.size());
    let doc: RunJson = serde_json::from_str(&text).unwrap();
    let back = RunTree::from_json(aut, &doc).unwrap();
    println!("replayed: {}", back == *run);
    for (i, k) in back.kind_sequence(aut).iter().enumerate() {
        println!("  {i}: {k}");
    }
}
