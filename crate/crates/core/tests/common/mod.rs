//! Strict readers for the text formats the library writes.

#![allow(dead_code)]

/// One element of a parsed XML tree.
#[derive(Debug)]
pub struct Element {
    pub name: String,
    pub attrs: Vec<(String, String)>,
    pub children: Vec<Element>,
}

impl Element {
    pub fn attr(&self, name: &str) -> Option<&str> {
        self.attrs.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str())
    }

    pub fn count(&self, name: &str) -> usize {
        usize::from(self.name == name) + self.children.iter().map(|c| c.count(name)).sum::<usize>()
    }
}

/// Parses a small XML subset: an optional declaration, then one root element
/// with attributes, nested elements and whitespace-only text. Anything else,
/// including mismatched or unclosed tags and duplicate attributes, is an error.
pub fn parse_xml(text: &str) -> Result<Element, String> {
    let mut rest = text.trim_start();
    if let Some(r) = rest.strip_prefix("<?xml") {
        let end = r.find("?>").ok_or("unterminated declaration")?;
        rest = r[end + 2..].trim_start();
    }
    let (root, tail) = parse_element(rest)?;
    if !tail.trim().is_empty() {
        return Err(format!("trailing content: {:?}", &tail[..tail.len().min(20)]));
    }
    Ok(root)
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | ':' | '.')
}

fn parse_name(s: &str) -> Result<(&str, &str), String> {
    let end = s.find(|c: char| !is_name_char(c)).unwrap_or(s.len());
    if end == 0 {
        return Err(format!("expected a name at {:?}", &s[..s.len().min(20)]));
    }
    Ok((&s[..end], &s[end..]))
}

fn parse_element(s: &str) -> Result<(Element, &str), String> {
    let s = s.strip_prefix('<').ok_or("expected '<'")?;
    let (name, mut s) = parse_name(s)?;
    let mut attrs: Vec<(String, String)> = Vec::new();
    loop {
        let t = s.trim_start();
        if let Some(r) = t.strip_prefix("/>") {
            let el = Element { name: name.into(), attrs, children: Vec::new() };
            return Ok((el, r));
        }
        if let Some(r) = t.strip_prefix('>') {
            s = r;
            break;
        }
        if t.len() == s.len() {
            return Err(format!("expected whitespace before attribute in <{name}>"));
        }
        let (key, r) = parse_name(t)?;
        let r = r.strip_prefix("=\"").ok_or(format!("attribute {key} needs =\"...\""))?;
        let end = r.find('"').ok_or("unterminated attribute value")?;
        let value = &r[..end];
        if value.contains('<') || value.contains('&') {
            return Err(format!("unescaped character in attribute {key}"));
        }
        if attrs.iter().any(|(k, _)| k == key) {
            return Err(format!("duplicate attribute {key}"));
        }
        attrs.push((key.into(), value.into()));
        s = &r[end + 1..];
    }
    let mut children = Vec::new();
    loop {
        let t = s.trim_start();
        if t.len() != s.len() || t.starts_with('<') {
            if let Some(r) = t.strip_prefix("</") {
                let (close, r) = parse_name(r)?;
                if close != name {
                    return Err(format!("</{close}> closes <{name}>"));
                }
                let r = r.trim_start().strip_prefix('>').ok_or("malformed end tag")?;
                return Ok((Element { name: name.into(), attrs, children }, r));
            }
            if t.starts_with('<') {
                let (child, r) = parse_element(t)?;
                children.push(child);
                s = r;
                continue;
            }
        }
        if t.is_empty() {
            return Err(format!("<{name}> is never closed"));
        }
        return Err(format!("unexpected text in <{name}>"));
    }
}

/// A parsed OBJ file holding vertices and polylines.
#[derive(Debug)]
pub struct Obj {
    pub vertices: Vec<[f64; 3]>,
    pub lines: Vec<Vec<usize>>,
}

/// Accepts comments, `v x y z` and `l i j ...` with 1-based indices in range.
pub fn parse_obj(text: &str) -> Result<Obj, String> {
    let mut obj = Obj { vertices: Vec::new(), lines: Vec::new() };
    for (no, line) in text.lines().enumerate() {
        let mut parts = line.split_whitespace();
        match parts.next() {
            None => {}
            Some(c) if c.starts_with('#') => {}
            Some("v") => {
                let coords: Vec<f64> = parts
                    .map(|p| p.parse::<f64>().map_err(|e| format!("line {}: {e}", no + 1)))
                    .collect::<Result<_, _>>()?;
                if coords.len() != 3 {
                    return Err(format!("line {}: vertex needs 3 coordinates", no + 1));
                }
                obj.vertices.push([coords[0], coords[1], coords[2]]);
            }
            Some("l") => {
                let idx: Vec<usize> = parts
                    .map(|p| p.parse::<usize>().map_err(|e| format!("line {}: {e}", no + 1)))
                    .collect::<Result<_, _>>()?;
                if idx.len() < 2 || idx.iter().any(|&i| i == 0 || i > obj.vertices.len()) {
                    return Err(format!("line {}: bad polyline", no + 1));
                }
                obj.lines.push(idx);
            }
            Some(other) => return Err(format!("line {}: unknown statement {other}", no + 1)),
        }
    }
    Ok(obj)
}
