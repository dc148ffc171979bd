use clap::ValueEnum;
use equicolor::graph::{parse_dimacs, parse_graph6, read_graph6_lines, EdgeListJson, Graph};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Dimacs,
    Graph6,
    Json,
}

impl InputFormat {
    fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()? {
            "col" | "dimacs" => Some(Self::Dimacs),
            "g6" | "graph6" => Some(Self::Graph6),
            "json" => Some(Self::Json),
            _ => None,
        }
    }

    /// Guess from content when the extension says nothing.
    fn sniff(text: &str) -> Self {
        let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
        if first.starts_with('{') {
            Self::Json
        } else if first.starts_with("c ") || first.starts_with("p ") || first == "c" {
            Self::Dimacs
        } else {
            Self::Graph6
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn format_for(path: &Path, text: &str, forced: Option<InputFormat>) -> InputFormat {
    forced
        .or_else(|| InputFormat::from_path(path))
        .unwrap_or_else(|| InputFormat::sniff(text))
}

/// One graph; for graph6 files, the first code in the file.
pub fn load_graph(path: &Path, forced: Option<InputFormat>) -> Result<Graph, String> {
    let text = read(path)?;
    let parsed = match format_for(path, &text, forced) {
        InputFormat::Dimacs => parse_dimacs(&text).map_err(|e| e.to_string()),
        InputFormat::Graph6 => {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .ok_or("empty graph6 file")?;
            parse_graph6(line).map_err(|e| e.to_string())
        }
        InputFormat::Json => serde_json::from_str::<EdgeListJson>(&text)
            .map_err(|e| e.to_string())
            .and_then(|j| Graph::try_from(j).map_err(|e| e.to_string())),
    };
    parsed.map_err(|e| format!("{}: {e}", path.display()))
}

/// Every graph of a corpus file: one graph6 code per line, or a single
/// graph in another format.
pub fn load_corpus(path: &Path, forced: Option<InputFormat>) -> Result<Vec<Graph>, String> {
    let text = read(path)?;
    match format_for(path, &text, forced) {
        InputFormat::Graph6 => read_graph6_lines(&text).map_err(|e| format!("{}: {e}", path.display())),
        _ => load_graph(path, forced).map(|g| vec![g]),
    }
}
