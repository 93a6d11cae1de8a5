use roxmltree::{Document, Node as XmlNode};

use super::ModelError;

/// Local name of the first element, skipping the prolog, comments and
/// doctype without parsing the rest of the document.
pub(super) fn root_element_name(text: &str) -> Option<&str> {
    let mut rest = text;
    loop {
        rest = rest.trim_start();
        if let Some(after) = rest.strip_prefix("<?") {
            rest = &after[after.find("?>")? + 2..];
        } else if let Some(after) = rest.strip_prefix("<!--") {
            rest = &after[after.find("-->")? + 3..];
        } else if let Some(after) = rest.strip_prefix("<!") {
            rest = &after[after.find('>')? + 1..];
        } else {
            let after = rest.strip_prefix('<')?;
            let end = after
                .find(|c: char| c.is_whitespace() || c == '>' || c == '/')
                .unwrap_or(after.len());
            let qualified = &after[..end];
            return Some(qualified.rsplit(':').next().unwrap_or(qualified));
        }
    }
}

pub(super) fn parse_document(document: &[u8]) -> Result<Document<'_>, ModelError> {
    let text = std::str::from_utf8(document)
        .map_err(|e| ModelError::MalformedXml(format!("document is not UTF-8: {e}")))?;
    Document::parse(text).map_err(|e| ModelError::MalformedXml(e.to_string()))
}

pub(super) fn children<'a, 'input>(
    node: XmlNode<'a, 'input>,
) -> impl Iterator<Item = XmlNode<'a, 'input>> {
    node.children().filter(XmlNode::is_element)
}

pub(super) fn child<'a, 'input>(
    node: XmlNode<'a, 'input>,
    name: &str,
) -> Option<XmlNode<'a, 'input>> {
    children(node).find(|c| c.tag_name().name() == name)
}

pub(super) fn text_of(node: XmlNode<'_, '_>) -> String {
    node.descendants()
        .filter(XmlNode::is_text)
        .filter_map(|t| t.text())
        .collect::<String>()
        .trim()
        .to_owned()
}

pub(super) fn required_attr<'a>(node: XmlNode<'a, '_>, attr: &str) -> Result<&'a str, ModelError> {
    node.attribute(attr).ok_or_else(|| {
        ModelError::InvalidElement(format!(
            "<{}> at byte {} lacks the {attr:?} attribute",
            node.tag_name().name(),
            node.range().start
        ))
    })
}
