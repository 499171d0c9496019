use bootperc::constructions::{build_base, build_full, glue};
use bootperc::io::{emit_certificate, emit_graph, parse_certificate, parse_graph, read_trace, trace_to_string};
use bootperc::{run_fast, Hypergraph};
use proptest::prelude::*;

#[test]
fn generated_certificates_round_trip() {
    let mut certs: Vec<_> = (2..=5).map(|k| build_base(k).unwrap()).collect();
    certs.push(glue(&build_base(3).unwrap(), 3).unwrap());
    certs.extend([(3, 2), (4, 2)].map(|(r, k)| build_full(r, k).unwrap()));
    for cert in certs {
        let text = emit_certificate(&cert);
        let parsed = parse_certificate(&text).unwrap();
        assert_eq!(parsed, cert);
        assert_eq!(emit_certificate(&parsed), text);
    }
}

#[test]
fn vertex_order_is_canonicalised() {
    let a = parse_graph("{\"format_version\": \"1\", \"r\": 3, \"n\": 5, \"edges\": [[4, 0, 2], [3, 1, 0]]}").unwrap();
    let b = parse_graph("{\"format_version\": \"1\", \"r\": 3, \"n\": 5, \"edges\": [[0, 2, 4], [0, 1, 3]]}").unwrap();
    assert_eq!(a, b);
    assert!(emit_graph(&a.graph, None).contains("    [0, 1, 3],\n    [0, 2, 4]\n"));
}

#[test]
fn trace_round_trip() {
    let cert = build_base(2).unwrap();
    let res = run_fast(cert.graph(), 4).unwrap();
    let (header, records) = read_trace(trace_to_string(&res).as_bytes()).unwrap();
    assert_eq!(header.running_time, 12);
    assert_eq!(records.len(), 12);
    for (i, rec) in records.iter().enumerate() {
        assert_eq!(rec.step, i as u64 + 1);
        assert_eq!(rec.edge, cert.sequence()[i + 1].vertices());
    }
}

proptest! {
    #[test]
    fn random_graphs_round_trip(n in 4u32..9, mask in any::<u64>()) {
        let all: Vec<_> = Hypergraph::complete(n, 3).iter().cloned().collect();
        let chosen = all.into_iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, e)| e);
        let g = Hypergraph::new(n, 3, chosen).unwrap();
        let text = emit_graph(&g, None);
        let doc = parse_graph(&text).unwrap();
        prop_assert_eq!(&doc.graph, &g);
        prop_assert_eq!(emit_graph(&doc.graph, doc.k), text);
    }
}
