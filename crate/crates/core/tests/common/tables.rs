// Published single-deck S17 exact split values.
// Entries: (pair, up, [no resplit ND, no resplit DD, resplit to 4 ND, resplit to 4 DD]).
// Strings are kept as printed, with the leading decimal point dropped.
pub const EXACT_TABLE: &[(char, char, [&str; 4])] = &[
    ('A', 'A', ["223932", "223932", "261074", "261074"]),
    ('A', '2', ["565702", "565702", "639246", "639246"]),
    ('A', '3', ["612855", "612855", "686841", "686841"]),
    ('A', '4', ["668582", "668582", "742469", "742469"]),
    ('A', '5', ["732160", "732160", "807466", "807466"]),
    ('A', '6', ["758276", "758276", "831965", "831965"]),
    ('A', '7', ["540712", "540712", "627650", "627650"]),
    ('A', '8', ["406468", "406468", "486371", "486371"]),
    ('A', '9', ["289770", "289770", "360781", "360781"]),
    ('A', 'T', ["194252", "194252", "259524", "259524"]),
    ('2', 'A', ["-427834", "-421365", "-442273", "-434935"]),
    ('2', '2', ["-128397", "-0393101", "-128950", "-0358712"]),
    ('2', '3', ["-0701432", "0290697", "-0690329", "0393212"]),
    ('2', '4', ["00318339", "117502", "00632171", "131134"]),
    ('2', '5', ["127678", "273309", "136489", "295745"]),
    ('2', '6', ["118982", "272414", "126812", "294721"]),
    ('2', '7', ["-0544634", "00475233", "-0512111", "0138648"]),
    ('2', '8', ["-212597", "-177104", "-218564", "-179369"]),
    ('2', '9', ["-383379", "-359454", "-396823", "-370203"]),
    ('2', 'T', ["-459601", "-451895", "-475562", "-467058"]),
    ('3', 'A', ["-471347", "-462243", "-481365", "-471167"]),
    ('3', '2', ["-197137", "-112304", "-200181", "-107650"]),
    ('3', '3', ["-127583", "-0275217", "-127644", "-0232815"]),
    ('3', '4', ["00933911", "135241", "0157778", "153363"]),
    ('3', '5', ["116658", "276757", "127911", "303241"]),
    ('3', '6', ["111575", "274115", "122171", "300526"]),
    ('3', '7', ["-115327", "-0572504", "-108698", "-0448095"]),
    ('3', '8', ["-265388", "-226050", "-265841", "-222313"]),
    ('3', '9', ["-418153", "-396141", "-426060", "-401782"]),
    ('3', 'T', ["-504229", "-494166", "-517177", "-506105"]),
    ('4', 'A', ["-547373", "-535358", "-577198", "-563821"]),
    ('4', '2', ["-235941", "-149759", "-255764", "-161787"]),
    ('4', '3', ["-123036", "-0158384", "-134928", "-0177820"]),
    ('4', '4', ["-0133961", "122532", "-0174282", "124641"]),
    ('4', '5', ["0947167", "256441", "0908038", "264619"]),
    ('4', '6', ["0834385", "244333", "0765057", "248774"]),
    ('4', '7', ["-222838", "-158732", "-253997", "-183436"]),
    ('4', '8', ["-342754", "-299949", "-369351", "-322316"]),
    ('4', '9', ["-493182", "-469024", "-518806", "-492184"]),
    ('4', 'T', ["-570489", "-559246", "-599527", "-587208"]),
    ('5', 'A', ["-648455", "-633159", "-715392", "-698411"]),
    ('5', '2', ["-231716", "-156772", "-270361", "-209723"]),
    ('5', '3', ["-146072", "-0559217", "-179259", "-105188"]),
    ('5', '4', ["-0382401", "0703683", "-0653697", "0251227"]),
    ('5', '5', ["0681172", "205292", "0572212", "184731"]),
    ('5', '6', ["0558514", "200283", "0302934", "153548"]),
    ('5', '7', ["-298829", "-244667", "-352763", "-312307"]),
    ('5', '8', ["-448230", "-412012", "-509121", "-481385"]),
    ('5', '9', ["-607597", "-584760", "-674606", "-655884"]),
    ('5', 'T', ["-671747", "-660597", "-736385", "-724109"]),
    ('6', 'A', ["-637988", "-621394", "-658692", "-640104"]),
    ('6', '2', ["-218896", "-121724", "-212367", "-105632"]),
    ('6', '3', ["-132663", "-0136772", "-123591", "00709888"]),
    ('6', '4', ["-0275570", "111605", "-0140747", "138752"]),
    ('6', '5', ["0677142", "237513", "0851339", "271396"]),
    ('6', '6', ["-0106513", "155507", "-00389922", "169340"]),
    ('6', '7', ["-269899", "-201370", "-267862", "-192961"]),
    ('6', '8', ["-412582", "-367710", "-418612", "-369386"]),
    ('6', '9', ["-569709", "-544299", "-584491", "-556572"]),
    ('6', 'T', ["-655152", "-644208", "-677010", "-664948"]),
    ('7', 'A', ["-606933", "-595329", "-611818", "-598886"]),
    ('7', '2', ["-162585", "-0728641", "-151898", "-0537095"]),
    ('7', '3', ["-0789592", "0295195", "-0644500", "0548212"]),
    ('7', '4', ["0162682", "155107", "0341069", "186497"]),
    ('7', '5', ["0387914", "193212", "0557767", "223782"]),
    ('7', '6', ["0530242", "209924", "0727575", "243348"]),
    ('7', '7', ["-122529", "-0657473", "-110318", "-0512847"]),
    ('7', '8', ["-423471", "-385238", "-422274", "-380591"]),
    ('7', '9', ["-563840", "-545047", "-568856", "-548340"]),
    ('7', 'T', ["-625405", "-612578", "-636688", "-622459"]),
    ('8', 'A', ["-340317", "-333718", "-324889", "-317635"]),
    ('8', '2', ["0167248", "0890850", "0437250", "122665"]),
    ('8', '3', ["0817322", "161814", "110432", "197907"]),
    ('8', '4', ["105595", "195731", "133230", "230970"]),
    ('8', '5', ["188016", "291005", "218373", "330046"]),
    ('8', '6', ["233716", "340370", "269513", "385294"]),
    ('8', '7', ["202329", "250712", "251584", "303664"]),
    ('8', '8', ["-100087", "-0735091", "-0869704", "-59524.5"]),
    ('8', '9', ["-429934", "-406325", "-427063", "-401144"]),
    ('8', 'T', ["-462307", "-452319", "-458498", "-447501"]),
    ('9', 'A', ["-0721452", "-0705435", "-0716589", "-0700780"]),
    ('9', '2', ["170069", "202472", "172931", "208184"]),
    ('9', '3', ["170369", "211550", "172686", "217172"]),
    ('9', '4', ["252688", "299234", "258737", "309099"]),
    ('9', '5', ["339220", "392304", "349719", "407189"]),
    ('9', '6', ["359377", "413268", "365950", "424280"]),
    ('9', '7', ["340574", "362756", "334969", "358600"]),
    ('9', '8', ["179367", "195409", "190276", "207491"]),
    ('9', '9', ["-112424", "-102933", "-108836", "-0990434"]),
    ('9', 'T', ["-265721", "-260551", "-277966", "-272453"]),
    ('T', 'A', ["0985434", "0985434", "-354749", "-354749"]),
    ('T', '2', ["315676", "315676", "0473715", "0473715"]),
    ('T', '3', ["364448", "364448", "124252", "124252"]),
    ('T', '4', ["424782", "424782", "224812", "224812"]),
    ('T', '5', ["496722", "496722", "326618", "326618"]),
    ('T', '6', ["525105", "525105", "363571", "363571"]),
    ('T', '7', ["482229", "482229", "251783", "251783"]),
    ('T', '8', ["353853", "353853", "0117653", "0117653"]),
    ('T', '9', ["183754", "183754", "-255830", "-255830"]),
    ('T', 'T', ["0600557", "0600557", "-316452", "-316452"]),
];

/// Decodes a printed cell. Returns `None` for a malformed entry.
pub fn decode(cell: &str) -> Option<f64> {
    let (neg, digits) = match cell.strip_prefix('-') {
        Some(d) => (true, d),
        None => (false, cell),
    };
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let v: f64 = format!("0.{digits}").parse().ok()?;
    Some(if neg { -v } else { v })
}
