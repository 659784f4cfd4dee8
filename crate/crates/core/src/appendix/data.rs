// Vertex tables for the regular tetrahedron T0 and the standard tetrahedron T1.

pub(crate) const T0: [[i64; 3]; 116] = [
    [60000, 0, 0], [60000, 60000, 60000], [0, 0, 60000], [0, 60000, 0],
    [0, 30000, 30000], [60000, 30000, 30000], [30000, 30000, 0], [30000, 60000, 30000],
    [30000, 30000, 60000], [30000, 0, 30000], [33916, 43042, 16958], [43042, 26084, 43042],
    [16958, 16958, 26084], [16958, 33916, 43042], [43042, 16958, 33916], [43042, 33916, 16958],
    [43042, 43042, 26084], [16958, 26084, 16958], [16958, 43042, 33916], [26084, 43042, 43042],
    [26084, 16958, 16958], [33916, 16958, 43042], [34171, 39326, 34171], [20674, 34171, 25829],
    [25829, 25829, 39326], [34171, 25829, 20674], [25829, 20674, 34171], [39326, 34171, 34171],
    [39326, 25829, 25829], [20674, 25829, 34171], [34171, 20674, 25829], [34171, 34171, 39326],
    [25829, 34171, 20674], [25829, 39326, 25829], [24956, 35044, 35044], [39033, 32132, 27868],
    [27868, 27868, 20967], [32132, 20967, 32132], [32132, 32132, 20967], [24956, 24956, 24956],
    [32132, 39033, 27868], [20967, 27868, 27868], [39033, 27868, 32132], [35044, 35044, 24956],
    [20967, 32132, 32132], [27868, 20967, 27868], [35044, 24956, 35044], [27868, 32132, 39033],
    [32132, 27868, 39033], [27868, 39033, 32132], [35393, 30000, 35393], [24607, 30000, 24607],
    [35393, 24607, 30000], [24607, 35393, 30000], [35393, 30000, 24607], [24607, 30000, 35393],
    [24607, 24607, 30000], [35393, 35393, 30000], [30000, 35393, 24607], [30000, 24607, 35393],
    [30000, 24607, 24607], [30000, 35393, 35393], [33844, 26156, 26156], [33844, 33844, 33844],
    [26156, 26156, 33844], [26156, 33844, 26156], [24207, 28632, 31368], [31368, 31368, 35793],
    [28632, 35793, 28632], [28632, 28632, 35793], [28632, 24207, 31368], [35793, 31368, 31368],
    [24207, 31368, 28632], [35793, 28632, 28632], [31368, 35793, 31368], [31368, 28632, 24207],
    [28632, 31368, 24207], [31368, 24207, 28632], [31992, 31992, 25546], [34454, 28008, 31992],
    [28008, 25546, 28008], [28008, 31992, 34454], [31992, 34454, 28008], [25546, 28008, 28008],
    [25546, 31992, 31992], [34454, 31992, 28008], [28008, 34454, 31992], [28008, 28008, 25546],
    [31992, 28008, 34454], [31992, 25546, 31992], [32775, 32775, 30655], [27225, 30655, 27225],
    [29345, 27225, 32775], [32775, 29345, 27225], [27225, 32775, 29345], [27225, 29345, 32775],
    [27225, 27225, 30655], [32775, 30655, 32775], [32775, 27225, 29345], [30655, 27225, 27225],
    [30655, 32775, 32775], [29345, 32775, 27225], [28494, 31506, 31506], [30865, 29135, 29135],
    [33159, 30000, 30000], [28494, 28494, 28494], [29135, 29135, 30865], [26841, 30000, 30000],
    [30000, 30000, 33159], [30000, 26841, 30000], [31506, 31506, 28494], [29135, 30865, 29135],
    [30000, 30000, 26841], [31506, 28494, 31506], [30865, 30865, 30865], [30000, 33159, 30000],
];

pub(crate) const T1: [[i64; 3]; 116] = [
    [60000, 0, 0], [0, 0, 0], [0, 0, 60000], [0, 60000, 0],
    [0, 30000, 30000], [17574, 0, 0], [30000, 30000, 0], [0, 17574, 0],
    [0, 0, 17574], [30000, 0, 30000], [12384, 20726, 0], [10445, 0, 10445],
    [16958, 16958, 26084], [0, 12384, 20726], [20726, 0, 12384], [20726, 12384, 0],
    [10445, 10445, 0], [16958, 26084, 16958], [0, 20726, 12384], [0, 10445, 10445],
    [26084, 16958, 16958], [12384, 0, 20726], [6257, 10104, 6257], [9498, 21496, 13569],
    [7743, 7743, 19656], [21496, 13569, 9498], [13569, 9498, 21496], [10104, 6257, 6257],
    [19656, 7743, 7743], [9498, 13569, 21496], [21496, 9498, 13569], [6257, 6257, 10104],
    [13569, 21496, 9498], [7743, 19656, 7743], [5137, 13344, 13344], [15349, 8879, 5284],
    [17685, 17685, 11260], [16563, 7777, 16563], [16563, 16563, 7777], [16026, 16026, 16026],
    [8879, 15349, 5284], [11260, 17685, 17685], [15349, 5284, 8879], [13344, 13344, 5137],
    [7777, 16563, 16563], [17685, 11260, 17685], [13344, 5137, 13344], [5284, 8879, 15349],
    [8879, 5284, 15349], [5284, 15349, 8879], [10649, 6407, 10649], [13477, 17719, 13477],
    [16305, 7821, 12063], [7821, 16305, 12063], [16305, 12063, 7821], [7821, 12063, 16305],
    [13477, 13477, 17719], [10649, 10649, 6407], [12063, 16305, 7821], [12063, 7821, 16305],
    [17719, 13477, 13477], [6407, 10649, 10649], [17102, 11055, 11055], [9039, 9039, 9039],
    [11055, 11055, 17102], [11055, 17102, 11055], [10544, 14025, 16177], [8666, 8666, 12147],
    [9383, 15016, 9383], [9383, 9383, 15016], [14025, 10544, 16177], [12147, 8666, 8666],
    [10544, 16177, 14025], [15016, 9383, 9383], [8666, 12147, 8666], [16177, 14025, 10544],
    [14025, 16177, 10544], [16177, 10544, 14025], [13876, 13876, 8805], [13231, 8160, 11294],
    [14921, 12984, 14921], [8160, 11294, 13231], [11294, 13231, 8160], [12984, 14921, 14921],
    [8805, 13876, 13876], [13231, 11294, 8160], [8160, 13231, 11294], [14921, 14921, 12984],
    [11294, 8160, 13231], [13876, 8805, 13876], [10992, 10992, 9324], [12447, 15145, 12447],
    [11891, 10223, 14589], [14589, 11891, 10223], [10223, 14589, 11891], [10223, 11891, 14589],
    [12447, 12447, 15145], [10992, 9324, 10992], [14589, 10223, 11891], [15145, 12447, 12447],
    [9324, 10992, 10992], [11891, 14589, 10223], [10088, 12458, 12458], [13197, 11836, 11836],
    [12891, 10406, 10406], [13247, 13247, 13247], [11836, 11836, 13197], [11234, 13719, 13719],
    [10406, 10406, 12891], [13719, 11234, 13719], [12458, 12458, 10088], [11836, 13197, 11836],
    [13719, 13719, 11234], [12458, 10088, 12458], [11382, 11382, 11382], [10406, 12891, 10406],
];

// Edges shared by both tables.
pub(crate) const EDGES: [[u32; 2]; 678] = [
    [4, 2], [4, 3], [5, 0], [5, 1], [6, 0], [6, 3], [7, 1], [7, 3], [8, 1], [8, 2],
    [9, 0], [9, 2], [10, 3], [10, 6], [10, 7], [11, 1], [11, 5], [11, 8], [12, 2], [12, 4],
    [12, 9], [13, 2], [13, 4], [13, 8], [14, 0], [14, 5], [14, 9], [14, 11], [15, 0], [15, 5],
    [15, 6], [15, 10], [16, 1], [16, 5], [16, 7], [16, 10], [16, 15], [17, 3], [17, 4], [17, 6],
    [17, 12], [18, 3], [18, 4], [18, 7], [18, 13], [19, 1], [19, 7], [19, 8], [19, 13], [19, 18],
    [20, 0], [20, 6], [20, 9], [20, 12], [20, 17], [21, 2], [21, 8], [21, 9], [21, 11], [21, 14],
    [22, 1], [22, 7], [22, 16], [22, 19], [23, 3], [23, 4], [23, 17], [23, 18], [24, 2], [24, 8],
    [24, 13], [24, 21], [25, 0], [25, 6], [25, 15], [25, 20], [26, 2], [26, 9], [26, 12], [26, 21],
    [26, 24], [27, 1], [27, 5], [27, 11], [27, 16], [27, 22], [28, 0], [28, 5], [28, 14], [28, 15],
    [28, 25], [29, 2], [29, 4], [29, 12], [29, 13], [29, 24], [29, 26], [30, 0], [30, 9], [30, 14],
    [30, 20], [30, 25], [30, 28], [31, 1], [31, 8], [31, 11], [31, 19], [31, 22], [31, 27], [32, 3],
    [32, 6], [32, 10], [32, 17], [32, 23], [33, 3], [33, 7], [33, 10], [33, 18], [33, 23], [33, 32],
    [34, 13], [34, 18], [34, 19], [35, 5], [35, 15], [35, 16], [35, 27], [35, 28], [36, 6], [36, 17],
    [36, 20], [36, 25], [36, 32], [37, 9], [37, 14], [37, 21], [37, 26], [37, 30], [38, 6], [38, 10],
    [38, 15], [38, 25], [38, 32], [38, 36], [39, 12], [39, 17], [39, 20], [39, 36], [40, 7], [40, 10],
    [40, 16], [40, 22], [40, 33], [41, 4], [41, 12], [41, 17], [41, 23], [41, 29], [41, 39], [42, 5],
    [42, 11], [42, 14], [42, 27], [42, 28], [42, 35], [43, 10], [43, 15], [43, 16], [43, 35], [43, 38],
    [43, 40], [44, 4], [44, 13], [44, 18], [44, 23], [44, 29], [44, 34], [44, 41], [45, 9], [45, 12],
    [45, 20], [45, 26], [45, 30], [45, 37], [45, 39], [46, 11], [46, 14], [46, 21], [46, 37], [46, 42],
    [47, 8], [47, 13], [47, 19], [47, 24], [47, 31], [47, 34], [48, 8], [48, 11], [48, 21], [48, 24],
    [48, 31], [48, 46], [48, 47], [49, 7], [49, 18], [49, 19], [49, 22], [49, 33], [49, 34], [49, 40],
    [50, 11], [50, 27], [50, 31], [50, 42], [50, 46], [50, 48], [51, 17], [51, 23], [51, 32], [51, 36],
    [51, 39], [51, 41], [52, 14], [52, 28], [52, 30], [52, 37], [52, 42], [52, 46], [53, 18], [53, 23],
    [53, 33], [53, 34], [53, 44], [53, 49], [54, 15], [54, 25], [54, 28], [54, 35], [54, 38], [54, 43],
    [55, 13], [55, 24], [55, 29], [55, 34], [55, 44], [55, 47], [56, 12], [56, 26], [56, 29], [56, 39],
    [56, 41], [56, 45], [57, 16], [57, 22], [57, 27], [57, 35], [57, 40], [57, 43], [58, 10], [58, 32],
    [58, 33], [58, 38], [58, 40], [58, 43], [59, 21], [59, 24], [59, 26], [59, 37], [59, 46], [59, 48],
    [60, 20], [60, 25], [60, 30], [60, 36], [60, 39], [60, 45], [61, 19], [61, 22], [61, 31], [61, 34],
    [61, 47], [61, 49], [62, 25], [62, 28], [62, 30], [62, 52], [62, 54], [62, 60], [63, 22], [63, 27],
    [63, 31], [63, 50], [63, 57], [63, 61], [64, 24], [64, 26], [64, 29], [64, 55], [64, 56], [64, 59],
    [65, 23], [65, 32], [65, 33], [65, 51], [65, 53], [65, 58], [66, 29], [66, 41], [66, 44], [66, 55],
    [66, 56], [66, 64], [67, 31], [67, 47], [67, 48], [67, 50], [67, 61], [67, 63], [68, 33], [68, 40],
    [68, 49], [68, 53], [68, 58], [68, 65], [69, 24], [69, 47], [69, 48], [69, 55], [69, 59], [69, 64],
    [69, 67], [70, 26], [70, 37], [70, 45], [70, 56], [70, 59], [70, 64], [71, 27], [71, 35], [71, 42],
    [71, 50], [71, 57], [71, 63], [72, 23], [72, 41], [72, 44], [72, 51], [72, 53], [72, 65], [72, 66],
    [73, 28], [73, 35], [73, 42], [73, 52], [73, 54], [73, 62], [73, 71], [74, 22], [74, 40], [74, 49],
    [74, 57], [74, 61], [74, 63], [74, 68], [75, 25], [75, 36], [75, 38], [75, 54], [75, 60], [75, 62],
    [76, 32], [76, 36], [76, 38], [76, 51], [76, 58], [76, 65], [76, 75], [77, 30], [77, 37], [77, 45],
    [77, 52], [77, 60], [77, 62], [77, 70], [78, 38], [78, 43], [78, 54], [78, 58], [78, 75], [78, 76],
    [79, 42], [79, 46], [79, 50], [79, 52], [79, 71], [79, 73], [80, 39], [80, 45], [80, 56], [80, 60],
    [80, 70], [80, 77], [81, 34], [81, 47], [81, 55], [81, 61], [81, 67], [81, 69], [82, 40], [82, 43],
    [82, 57], [82, 58], [82, 68], [82, 74], [82, 78], [83, 39], [83, 41], [83, 51], [83, 56], [83, 66],
    [83, 72], [83, 80], [84, 34], [84, 44], [84, 53], [84, 55], [84, 66], [84, 72], [84, 81], [85, 35],
    [85, 43], [85, 54], [85, 57], [85, 71], [85, 73], [85, 78], [85, 82], [86, 34], [86, 49], [86, 53],
    [86, 61], [86, 68], [86, 74], [86, 81], [86, 84], [87, 36], [87, 39], [87, 51], [87, 60], [87, 75],
    [87, 76], [87, 80], [87, 83], [88, 46], [88, 48], [88, 50], [88, 59], [88, 67], [88, 69], [88, 79],
    [89, 37], [89, 46], [89, 52], [89, 59], [89, 70], [89, 77], [89, 79], [89, 88], [90, 57], [90, 63],
    [90, 71], [90, 74], [90, 82], [90, 85], [91, 51], [91, 65], [91, 72], [91, 76], [91, 83], [91, 87],
    [92, 59], [92, 64], [92, 69], [92, 70], [92, 88], [92, 89], [93, 54], [93, 62], [93, 73], [93, 75],
    [93, 78], [93, 85], [94, 53], [94, 65], [94, 68], [94, 72], [94, 84], [94, 86], [94, 91], [95, 55],
    [95, 64], [95, 66], [95, 69], [95, 81], [95, 84], [95, 92], [96, 56], [96, 64], [96, 66], [96, 70],
    [96, 80], [96, 83], [96, 92], [96, 95], [97, 50], [97, 63], [97, 67], [97, 71], [97, 79], [97, 88],
    [97, 90], [98, 52], [98, 62], [98, 73], [98, 77], [98, 79], [98, 89], [98, 93], [99, 60], [99, 62],
    [99, 75], [99, 77], [99, 80], [99, 87], [99, 93], [99, 98], [100, 61], [100, 63], [100, 67], [100, 74],
    [100, 81], [100, 86], [100, 90], [100, 97], [101, 58], [101, 65], [101, 68], [101, 76], [101, 78], [101, 82],
    [101, 91], [101, 94], [102, 81], [102, 84], [102, 86], [102, 94], [102, 95], [102, 100], [103, 93], [103, 98],
    [103, 99], [104, 71], [104, 73], [104, 79], [104, 85], [104, 90], [104, 93], [104, 97], [104, 98], [104, 103],
    [105, 80], [105, 83], [105, 87], [105, 91], [105, 96], [105, 99], [105, 103], [106, 92], [106, 95], [106, 96],
    [106, 102], [106, 103], [106, 105], [107, 66], [107, 72], [107, 83], [107, 84], [107, 91], [107, 94], [107, 95],
    [107, 96], [107, 102], [107, 105], [107, 106], [108, 67], [108, 69], [108, 81], [108, 88], [108, 92], [108, 95],
    [108, 97], [108, 100], [108, 102], [108, 106], [109, 70], [109, 77], [109, 80], [109, 89], [109, 92], [109, 96],
    [109, 98], [109, 99], [109, 103], [109, 105], [109, 106], [110, 78], [110, 82], [110, 85], [110, 90], [110, 93],
    [110, 101], [110, 103], [110, 104], [111, 91], [111, 94], [111, 101], [111, 102], [111, 103], [111, 105], [111, 106],
    [111, 107], [111, 110], [112, 75], [112, 76], [112, 78], [112, 87], [112, 91], [112, 93], [112, 99], [112, 101],
    [112, 103], [112, 105], [112, 110], [112, 111], [113, 79], [113, 88], [113, 89], [113, 92], [113, 97], [113, 98],
    [113, 103], [113, 104], [113, 106], [113, 108], [113, 109], [114, 90], [114, 97], [114, 100], [114, 102], [114, 103],
    [114, 104], [114, 106], [114, 108], [114, 110], [114, 111], [114, 113], [115, 68], [115, 74], [115, 82], [115, 86],
    [115, 90], [115, 94], [115, 100], [115, 101], [115, 102], [115, 110], [115, 111], [115, 114],
];
