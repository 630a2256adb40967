use std::fs::File;
use std::io::{self, BufWriter, Read, Write};

use netcoherence::Graph;

use crate::manifest::InputInfo;
use crate::CliError;

/// Path meaning standard input or output.
pub const STDIO: &str = "-";

pub fn read_text(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    if path == STDIO {
        io::stdin().read_to_string(&mut text)?;
    } else {
        File::open(path)
            .and_then(|mut f| f.read_to_string(&mut text))
            .map_err(|e| CliError::Data(format!("cannot read {path}: {e}")))?;
    }
    Ok(text)
}

pub fn open_output(path: &str) -> Result<Box<dyn Write>, CliError> {
    if path == STDIO {
        Ok(Box::new(BufWriter::new(io::stdout().lock())))
    } else {
        let file =
            File::create(path).map_err(|e| CliError::Data(format!("cannot create {path}: {e}")))?;
        Ok(Box::new(BufWriter::new(file)))
    }
}

/// Comment lines (`#` or `%`) before the first edge, with the marker removed.
pub fn header_comments(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .take_while(|l| l.is_empty() || l.starts_with('#') || l.starts_with('%'))
        .filter(|l| !l.is_empty())
        .map(|l| l[1..].trim().to_string())
        .collect()
}

/// A parsed graph and its ingestion record.
pub struct Loaded {
    pub graph: Graph,
    pub info: InputInfo,
}

/// Reads an edge list. With `lcc`, keeps only the largest connected
/// component and records how many vertices were dropped.
pub fn load_graph(path: &str, lcc: bool) -> Result<Loaded, CliError> {
    let text = read_text(path)?;
    let full = Graph::from_edge_list(&text)?;
    let graph = if lcc {
        full.largest_connected_component()
    } else {
        full.clone()
    };
    let info = InputInfo {
        path: path.to_string(),
        header: header_comments(&text),
        vertices_read: full.n(),
        edges_read: full.m(),
        vertices_used: graph.n(),
        edges_used: graph.m(),
        dropped_vertices: full.n() - graph.n(),
    };
    Ok(Loaded { graph, info })
}
